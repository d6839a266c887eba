#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "specwass/space.hpp"

namespace specwass {

// Probability weights over the points of a space. The finite stand-in for a
// state: simplex membership is enforced at construction (sum one within 1e-12,
// all weights nonnegative).
class Distribution {
 public:
  explicit Distribution(std::vector<double> weights, std::string space_ref = "");

  static Distribution point_mass(std::size_t index, std::size_t n, std::string space_ref = "");
  static Distribution uniform(std::size_t n, std::string space_ref = "");

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::string& space_ref() const { return space_ref_; }

  std::vector<std::size_t> support() const;

 private:
  std::string space_ref_;
  std::vector<double> weights_;
};

// Couple of weight vectors on the two sheets of an almost-commutative space;
// jointly normalized: sum(mu) + sum(nu) = 1.
struct TwoSheetState {
  std::vector<double> mu;  // sheet 0
  std::vector<double> nu;  // sheet 1

  TwoSheetState(std::vector<double> mu_sheet0, std::vector<double> nu_sheet1);
};

// Component-wise weighted mean of the coords. Needs an embedded space.
std::vector<double> barycenter(const FiniteMetricSpace& space, const Distribution& d);

// E(d(x0, .); mu) = sum_i w_i d(x0, i).
double first_moment(const FiniteMetricSpace& space, const Distribution& d, std::size_t x0_index);

// Samples a density at the nodes of a 1-D grid (midpoint rule on an
// equispaced grid reduces to plain proportionality) and renormalizes.
Distribution discretize_density(const std::function<double(double)>& shape,
                                const FiniteMetricSpace& grid);

}  // namespace specwass
