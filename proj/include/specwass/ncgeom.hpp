#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "specwass/cost.hpp"
#include "specwass/distribution.hpp"
#include "specwass/space.hpp"
#include "specwass/two_sheet.hpp"

namespace specwass {

// Barycenter coordinates of a state of M2(C); the state space is the closed
// unit ball with the axis joining the two D-eigenstates vertical.
struct BlochState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct JumpCostParams {
  enum class Shift { None, Linear, Quadratic };
  double norm_di = 1.0;
  Shift shift = Shift::None;
};

// Distance on the equatorial circle of radius r: (2r/|D1-D2|) |sin((t1-t2)/2)|.
double equatorial_distance(double theta1, double theta2, double r, double dD);

// Grid search for a metric midpoint between theta1 and theta2 under the
// equatorial distance with r = 1, |D1-D2| = 1. Returns the smallest
// achievable max-deviation from the two half-distance conditions; a strictly
// positive value certifies that no midpoint exists at grid resolution.
double midpoint_defect(double theta1, double theta2, std::size_t grid_n);

// Same search for an arbitrary distance function over candidates in
// [lo, hi]; the unit test uses it with |a-b| as a geodesic-space control.
template <class DistFn>
double midpoint_defect_on(DistFn dist, double a, double b, double lo, double hi,
                          std::size_t grid_n) {
  const double full = dist(a, b);
  const double half = 0.5 * full;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid_n; ++k) {
    const double m = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid_n);
    const double defect = std::max(std::abs(dist(a, m) - half), std::abs(dist(m, b) - half));
    best = std::min(best, defect);
  }
  return best;
}

// Distance on the truncated Moyal state ball: with d_Ec the Euclidean
// distance and alpha the elevation of the segment from the horizontal plane,
//   sqrt(theta/2) * cos(alpha) * d_Ec            for alpha <= pi/4,
//   sqrt(theta/2) * d_Ec / (2 sin(alpha))        for alpha >= pi/4
// (both branches agree at pi/4).
double moyal_ball_distance(const BlochState& a, const BlochState& b, double theta_param);

// sqrt(d^2 + 1/||D_I||^2) with an exact 1/||D_I|| on the diagonal; shared by
// the jump cost and the cross-sheet closed form so the two sides agree
// bit for bit.
inline double jump_hypot(double base_d, double norm_di) {
  const double j = 1.0 / norm_di;
  if (base_d == 0.0) return j;
  return std::sqrt(base_d * base_d + j * j);
}

// Cross-sheet cost c_I(x,y) = sqrt(d(x,y)^2 + 1/||D_I||^2), minus the chosen
// shift. Linear shift restores a vanishing diagonal; the quadratic variant
// (the paper states both) is only valid while it stays nonnegative.
CostMatrix jump_cost(const FiniteMetricSpace& base, const JumpCostParams& params);

// d'((x,0),(y,1)) = sqrt(d(x,y)^2 + 1/||D_I||^2), the product-geodesic value.
double two_sheet_pure_distance(double base_d, double norm_di);

// Optimal transport between two-sheet states embedded on the t = 0 and t = 1
// levels of the product grid, with the grid metric as cost.
double two_sheet_state_distance(const TwoSheetSpace& space, const TwoSheetState& s1,
                                const TwoSheetState& s2);

// The jump-cost LP value between cross-sheet pure states against the
// product-geodesic closed form; the two agree analytically, and the residual
// is asserted <= 1e-12.
struct JumpWorkReport {
  double w_jump = 0.0;
  double d_prime = 0.0;
  double residual = 0.0;
};
JumpWorkReport jump_work_identity(const FiniteMetricSpace& base, double norm_di,
                                  std::size_t x_idx, std::size_t y_idx);

// Higgs-fluctuated fiber: the grid geodesic (x,0) -> (y,1) against the
// candidate cost sqrt(d(x,y)^2 + (1/profile[x])^2). No equality holds in
// general; both values are reported.
struct HiggsReport {
  double geodesic = 0.0;
  double tilde_cost = 0.0;
};
HiggsReport higgs_comparison(const FiniteMetricSpace& base, const std::vector<double>& profile,
                             std::size_t fiber_points, std::size_t x_idx, std::size_t y_idx);

}  // namespace specwass
