#pragma once

#include <string>
#include <utility>
#include <vector>

#include "specwass/distribution.hpp"
#include "specwass/errors.hpp"
#include "specwass/space.hpp"

namespace specwass {

// Raised when an explicit space file fails the metric axioms; carries the
// report so callers can print witnesses.
struct MetricFileError : Error {
  MetricFileError(std::string msg, std::vector<MetricViolation> report_)
      : Error(std::move(msg)), report(std::move(report_)) {}
  std::vector<MetricViolation> report;
};

// Space file:
//   { "points": [{"id": "p0", "coords": [0.0]}, ...],
//     "metric": "explicit" | "euclidean",
//     "matrix": [[...]] }            (required iff metric == "explicit")
// Explicit matrices get the full metric validation; euclidean ones are
// derived from coords.
FiniteMetricSpace load_space(const std::string& path);
void save_space(const FiniteMetricSpace& space, const std::string& path);

// Distribution file: { "space": "<path or label>", "weights": [...] }.
// The weights must match the paired space's size; the space field is kept as
// an informational reference.
Distribution load_distribution(const std::string& path, const FiniteMetricSpace& space);
void save_distribution(const Distribution& d, const std::string& path);

// CSV of "x,value" rows.
std::vector<std::pair<double, double>> load_xy_csv(const std::string& path);

// CSV of "point_id,value" rows resolved against the base space's ids.
std::vector<double> load_profile_csv(const std::string& path, const FiniteMetricSpace& base);

}  // namespace specwass
