#include "specwass/ncgeom.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "specwass/errors.hpp"
#include "specwass/solver.hpp"

namespace specwass {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_in_ball(const BlochState& s, const char* which) {
  const double r2 = s.x * s.x + s.y * s.y + s.z * s.z;
  if (r2 > 1.0 + 1e-12)
    throw ParamError(std::string("moyal_ball_distance: state ") + which +
                     " lies outside the closed unit ball");
}

}  // namespace

double equatorial_distance(double theta1, double theta2, double r, double dD) {
  if (r < 0.0 || r > 1.0) throw ParamError("equatorial_distance: r must lie in [0, 1]");
  if (dD <= 0.0) throw ParamError("equatorial_distance: |D1 - D2| must be positive");
  return (2.0 * r / dD) * std::abs(std::sin(0.5 * (theta1 - theta2)));
}

double midpoint_defect(double theta1, double theta2, std::size_t grid_n) {
  if (grid_n < 1000) throw ParamError("midpoint_defect: need grid_n >= 1000");
  const auto d = [](double a, double b) { return equatorial_distance(a, b, 1.0, 1.0); };
  if (d(theta1, theta2) == 0.0)
    throw DegenerateError("midpoint_defect: coincident angles");
  return midpoint_defect_on(d, theta1, theta2, 0.0, 2.0 * kPi, grid_n);
}

double moyal_ball_distance(const BlochState& a, const BlochState& b, double theta_param) {
  if (theta_param <= 0.0) throw ParamError("moyal_ball_distance: theta must be positive");
  check_in_ball(a, "a");
  check_in_ball(b, "b");

  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  const double horizontal = std::sqrt(dx * dx + dy * dy);
  const double d_ec = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (d_ec == 0.0) return 0.0;

  const double sin_alpha = std::abs(dz) / d_ec;
  const double cos_alpha = horizontal / d_ec;
  const double factor = (sin_alpha <= cos_alpha) ? cos_alpha : 1.0 / (2.0 * sin_alpha);
  return std::sqrt(0.5 * theta_param) * factor * d_ec;
}

CostMatrix jump_cost(const FiniteMetricSpace& base, const JumpCostParams& params) {
  if (params.norm_di <= 0.0) throw ParamError("jump_cost: norm_DI must be positive");
  const std::size_t n = base.size();
  const double j = 1.0 / params.norm_di;
  double shift = 0.0;
  switch (params.shift) {
    case JumpCostParams::Shift::None: shift = 0.0; break;
    case JumpCostParams::Shift::Linear: shift = j; break;
    case JumpCostParams::Shift::Quadratic: shift = j * j; break;
  }
  Matrix c(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double v = jump_hypot(base.dist(a, b), params.norm_di) - shift;
      if (v < 0.0)
        throw ParamError("jump_cost: the quadratic shift exceeds the cost floor "
                         "(needs ||D_I|| >= 1)");
      c(a, b) = v;
    }
  return CostMatrix(std::move(c), params.shift == JumpCostParams::Shift::Linear);
}

double two_sheet_pure_distance(double base_d, double norm_di) {
  if (base_d < 0.0) throw ParamError("two_sheet_pure_distance: distance must be nonnegative");
  if (norm_di <= 0.0) throw ParamError("two_sheet_pure_distance: norm_DI must be positive");
  return jump_hypot(base_d, norm_di);
}

double two_sheet_state_distance(const TwoSheetSpace& space, const TwoSheetState& s1,
                                const TwoSheetState& s2) {
  const std::size_t n = space.base_size();
  if (s1.mu.size() != n || s2.mu.size() != n)
    throw EmbeddingError(
        "two_sheet_state_distance: state weights do not match the base space");

  std::vector<double> w1(2 * n), w2(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    w1[i] = s1.mu[i];
    w1[n + i] = s1.nu[i];
    w2[i] = s2.mu[i];
    w2[n + i] = s2.nu[i];
  }
  const FiniteMetricSpace boundary = space.boundary_space();
  const CostMatrix cost = CostMatrix::from_metric_space(boundary);
  const Distribution d1(std::move(w1));
  const Distribution d2(std::move(w2));
  return solve_primal(cost, d1, d2).value;
}

JumpWorkReport jump_work_identity(const FiniteMetricSpace& base, double norm_di, std::size_t x_idx,
                          std::size_t y_idx) {
  const std::size_t n = base.size();
  if (x_idx >= n || y_idx >= n) throw IndexError("jump_work_identity: point index out of range");

  const CostMatrix ci = jump_cost(base, {norm_di, JumpCostParams::Shift::None});
  const auto dx = Distribution::point_mass(x_idx, n);
  const auto dy = Distribution::point_mass(y_idx, n);

  JumpWorkReport rep;
  rep.w_jump = solve_jump(ci, dx, dy).plan.value;
  rep.d_prime = two_sheet_pure_distance(base.dist(x_idx, y_idx), norm_di);
  rep.residual = std::abs(rep.w_jump - rep.d_prime);
  if (rep.residual > 1e-12)
    throw GapError("jump_work_identity: residual " + std::to_string(rep.residual) +
                   " exceeds 1e-12");
  return rep;
}

HiggsReport higgs_comparison(const FiniteMetricSpace& base, const std::vector<double>& profile,
                             std::size_t fiber_points, std::size_t x_idx, std::size_t y_idx) {
  const std::size_t n = base.size();
  if (x_idx >= n || y_idx >= n) throw IndexError("higgs_comparison: point index out of range");
  if (profile.size() != n)
    throw ShapeError("higgs_comparison: profile must have one value per base point");
  for (double p : profile)
    if (p <= 0.0) throw ParamError("higgs_comparison: profile must be positive");

  const TwoSheetSpace grid = build_two_sheet(base, 1.0, fiber_points, &profile);
  HiggsReport rep;
  rep.geodesic = grid.geodesic(grid.node(x_idx, 0), grid.node(y_idx, fiber_points - 1));
  rep.tilde_cost = jump_hypot(base.dist(x_idx, y_idx), profile[x_idx]);
  return rep;
}

}  // namespace specwass
