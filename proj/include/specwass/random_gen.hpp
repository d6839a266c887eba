#pragma once

#include <cstddef>
#include <vector>

#include "specwass/distribution.hpp"
#include "specwass/rng.hpp"
#include "specwass/solver.hpp"
#include "specwass/space.hpp"

namespace specwass {

// Seeded instance generators used by the verify suites and the acceptance
// run. All of them are deterministic functions of the generator state.

// Metric space with entries in (0, scale]: random symmetric matrix repaired
// into a metric by its min-plus closure.
FiniteMetricSpace random_metric_space(SplitMix64& rng, std::size_t n, double scale = 1.0);

// Integer metric (same construction over small integers), returned both as
// doubles and exactly.
struct IntegerMetric {
  Matrix dist;
  RationalMatrix exact;
};
IntegerMetric random_integer_metric(SplitMix64& rng, std::size_t n, int max_entry = 20);

// Distribution supported on support_size random points.
Distribution random_distribution(SplitMix64& rng, std::size_t n, std::size_t support_size);

// Rational weights k_i / K on `support_size` random points, plus the same
// weights as doubles (k_i / K is not required to be representable; the
// double twin is for mixed checks only).
struct RationalWeights {
  std::vector<Rational> exact;
  std::vector<double> approx;
};
RationalWeights random_rational_weights(SplitMix64& rng, std::size_t n,
                                        std::size_t support_size, int k_max = 12);

}  // namespace specwass
