#include "specwass/random_gen.hpp"

#include <algorithm>
#include <string>

#include "specwass/errors.hpp"

namespace specwass {

namespace {

// In-place min-plus closure turns any symmetric nonnegative matrix with a
// zero diagonal into a metric.
template <class T>
void min_plus_closure(Mat<T>& d) {
  const std::size_t n = d.rows();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const T via = d(i, k) + d(k, j);
        if (via < d(i, j)) d(i, j) = via;
      }
}

std::vector<std::size_t> pick_support(SplitMix64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

FiniteMetricSpace random_metric_space(SplitMix64& rng, std::size_t n, double scale) {
  if (n < 1) throw SizeError("random_metric_space: need n >= 1");
  Matrix d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = rng.uniform(0.05 * scale, scale);
      d(i, j) = v;
      d(j, i) = v;
    }
  min_plus_closure(d);
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i].id = "r" + std::to_string(i);
  return FiniteMetricSpace(std::move(pts), std::move(d));
}

IntegerMetric random_integer_metric(SplitMix64& rng, std::size_t n, int max_entry) {
  Mat<long long> d(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const long long v = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(max_entry)));
      d(i, j) = v;
      d(j, i) = v;
    }
  min_plus_closure(d);
  IntegerMetric out{Matrix(n, n, 0.0), RationalMatrix(n, n, Rational{})};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.dist(i, j) = static_cast<double>(d(i, j));
      out.exact(i, j) = Rational(d(i, j));
    }
  return out;
}

Distribution random_distribution(SplitMix64& rng, std::size_t n, std::size_t support_size) {
  if (support_size == 0 || support_size > n)
    throw SizeError("random_distribution: support size out of range");
  const auto sup = pick_support(rng, n, support_size);
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  for (const std::size_t i : sup) {
    w[i] = 0.05 + rng.uniform01();
    total += w[i];
  }
  for (const std::size_t i : sup) w[i] /= total;
  return Distribution(std::move(w));
}

RationalWeights random_rational_weights(SplitMix64& rng, std::size_t n,
                                        std::size_t support_size, int k_max) {
  if (support_size == 0 || support_size > n)
    throw SizeError("random_rational_weights: support size out of range");
  const auto sup = pick_support(rng, n, support_size);
  std::vector<long long> k(n, 0);
  long long total = 0;
  for (const std::size_t i : sup) {
    k[i] = 1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(k_max)));
    total += k[i];
  }
  RationalWeights out;
  out.exact.resize(n);
  out.approx.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.exact[i] = Rational(k[i], total);
    out.approx[i] = static_cast<double>(k[i]) / static_cast<double>(total);
  }
  return out;
}

}  // namespace specwass
