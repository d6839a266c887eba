#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "specwass/matrix.hpp"

namespace specwass {

struct Point {
  std::string id;
  std::vector<double> coords;  // empty = no embedding
};

// One violated metric axiom with witness indices.
struct MetricViolation {
  enum class Axiom { Diagonal, Nonnegativity, Symmetry, Triangle };
  Axiom axiom;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;  // used by Triangle only
  double magnitude = 0.0;

  std::string describe() const;
};

// Checks diag = 0, symmetry, nonnegativity and the triangle inequality,
// all within an absolute tolerance. Empty report = valid metric.
// Throws ShapeError on a non-square matrix.
std::vector<MetricViolation> validate_metric(const Matrix& m, double tol = 1e-12);

// Labeled points plus a distance matrix. The constructor enforces unique ids,
// coherent coordinate dimensions, and the O(n^2) axioms (diagonal, symmetry,
// nonnegativity). The O(n^3) triangle check is left to validate_metric():
// builders produce matrices that satisfy it by construction, and file loading
// runs the full check on explicit matrices.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<Point> points, Matrix dist);

  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  double dist(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const Matrix& matrix() const { return dist_; }

  bool has_coords() const { return !points_.empty() && !points_[0].coords.empty(); }
  std::size_t coord_dim() const { return has_coords() ? points_[0].coords.size() : 0; }

  // True when dist equals the Euclidean distance of the coords within tol.
  bool is_euclidean(double tol = 1e-9) const;

 private:
  std::vector<Point> points_;
  Matrix dist_;
};

// n equispaced points on [a, b] with dist = |x_i - x_j| and 1-D coords.
FiniteMetricSpace build_grid_line(std::size_t n, double a, double b);

// n equispaced points on the circle of unit circumference,
// dist = min(|s_i - s_j|, 1 - |s_i - s_j|) with s_i = i/n. No coords.
FiniteMetricSpace build_grid_circle(std::size_t n);

}  // namespace specwass
