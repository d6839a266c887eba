#include "specwass/distribution.hpp"

#include <cmath>

#include "specwass/errors.hpp"

namespace specwass {

namespace {
constexpr double kSimplexTol = 1e-12;
}

Distribution::Distribution(std::vector<double> weights, std::string space_ref)
    : space_ref_(std::move(space_ref)), weights_(std::move(weights)) {
  if (weights_.empty()) throw ShapeError("Distribution: empty weight vector");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < 0.0)
      throw ParamError("Distribution: negative weight at index " + std::to_string(i));
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kSimplexTol)
    throw NormalizationError("Distribution: weights sum to " + std::to_string(sum) +
                             ", expected 1 within 1e-12");
}

Distribution Distribution::point_mass(std::size_t index, std::size_t n, std::string space_ref) {
  if (index >= n) throw IndexError("Distribution::point_mass: index out of range");
  std::vector<double> w(n, 0.0);
  w[index] = 1.0;
  return Distribution(std::move(w), std::move(space_ref));
}

Distribution Distribution::uniform(std::size_t n, std::string space_ref) {
  if (n == 0) throw ShapeError("Distribution::uniform: empty space");
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  return Distribution(std::move(w), std::move(space_ref));
}

std::vector<std::size_t> Distribution::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] > 0.0) s.push_back(i);
  return s;
}

TwoSheetState::TwoSheetState(std::vector<double> mu_sheet0, std::vector<double> nu_sheet1)
    : mu(std::move(mu_sheet0)), nu(std::move(nu_sheet1)) {
  if (mu.size() != nu.size())
    throw ShapeError("TwoSheetState: sheet weight vectors must have equal length");
  double sum = 0.0;
  for (double w : mu) {
    if (w < 0.0) throw ParamError("TwoSheetState: negative weight on sheet 0");
    sum += w;
  }
  for (double w : nu) {
    if (w < 0.0) throw ParamError("TwoSheetState: negative weight on sheet 1");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexTol)
    throw NormalizationError("TwoSheetState: total mass must be 1 within 1e-12");
}

std::vector<double> barycenter(const FiniteMetricSpace& space, const Distribution& d) {
  if (d.size() != space.size())
    throw ShapeError("barycenter: distribution/space size mismatch");
  if (!space.has_coords())
    throw UnsupportedSpaceError("barycenter: space carries no coordinates");
  const std::size_t dim = space.coord_dim();
  std::vector<double> bar(dim, 0.0);
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t k = 0; k < dim; ++k)
      bar[k] += d[i] * space.point(i).coords[k];
  return bar;
}

double first_moment(const FiniteMetricSpace& space, const Distribution& d, std::size_t x0_index) {
  if (d.size() != space.size())
    throw ShapeError("first_moment: distribution/space size mismatch");
  if (x0_index >= space.size()) throw IndexError("first_moment: x0 index out of range");
  double m = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) m += d[i] * space.dist(x0_index, i);
  return m;
}

Distribution discretize_density(const std::function<double(double)>& shape,
                                const FiniteMetricSpace& grid) {
  if (!grid.has_coords() || grid.coord_dim() != 1)
    throw UnsupportedSpaceError("discretize_density: grid must carry 1-D coordinates");
  const std::size_t n = grid.size();
  std::vector<double> w(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = shape(grid.point(i).coords[0]);
    if (s < 0.0)
      throw ParamError("discretize_density: density negative at grid point " + std::to_string(i));
    w[i] = s;
    sum += s;
  }
  if (sum <= 0.0)
    throw DegenerateError("discretize_density: density vanishes on the whole grid");
  for (double& x : w) x /= sum;
  return Distribution(std::move(w));
}

}  // namespace specwass
