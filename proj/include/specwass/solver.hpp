#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

#include "specwass/cost.hpp"
#include "specwass/distribution.hpp"
#include "specwass/matrix.hpp"

namespace specwass {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = Mat<Rational>;

struct PlanEntry {
  std::size_t from;
  std::size_t to;
  double mass;
};

// Coupling with prescribed marginals: row sums = mu1, column sums = mu2.
// Stored sparsely; zero-weight points never appear in entries.
struct TransportPlan {
  std::size_t n = 0;  // ambient space size
  std::vector<PlanEntry> entries;
  double value = 0.0;

  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
  Matrix to_dense() const;
};

// Single dual potential: f(i) - f(j) <= cost(i, j) for all pairs, with
// value = sum_i f(i) (mu1(i) - mu2(i)). Gauge-fixed so that f vanishes at the
// lowest-index support point.
struct DualPotential {
  std::vector<double> f;
  double value = 0.0;
  std::vector<double> delta;  // mu1 - mu2, kept for pairing checks

  // Largest violation of f(i) - f(j) - cost(i, j) over all pairs (>0 means
  // infeasible beyond rounding).
  double max_violation(const CostMatrix& cost) const;
};

struct SolveResult {
  TransportPlan plan;
  DualPotential potential;
  double gap = 0.0;  // plan.value - potential.value
};

// Optimal coupling by the transportation simplex on the support points.
TransportPlan solve_primal(const CostMatrix& cost, const Distribution& mu1,
                           const Distribution& mu2);

// Optimal single potential, max sum f (mu1 - mu2) subject to the pairwise
// difference constraints. For non-metric costs the constraints are closed
// under relaying first (all-pairs shortest path), which is what makes the
// single-potential formulation the exact LP dual of a flow with net
// imbalances. Potentials extend to zero-weight points by the tight
// 1-Lipschitz (McShane) extension.
DualPotential solve_dual(const CostMatrix& cost, const Distribution& mu1,
                         const Distribution& mu2);

// Runs both sides on the same instance.
SolveResult solve_both(const CostMatrix& cost, const Distribution& mu1, const Distribution& mu2);

// Same LP machinery for costs that do not vanish on the diagonal (the
// two-sheet jump costs). The dual constraint at i = j reads 0 <= cost[i][i]
// and is automatically satisfied; note that whenever an optimal plan pays the
// diagonal (e.g. mu1 = mu2 = delta_x, where the only plan costs
// cost[x][x] > 0) no single potential can reproduce that value, so
// result.gap is genuinely positive there. That is the LP face of "c_I is not
// a distance". Strong duality in the |gap| <= tol sense is a metric-cost
// statement; apply duality_gap() to metric instances only.
SolveResult solve_jump(const CostMatrix& cost, const Distribution& mu1, const Distribution& mu2);

// Returns plan.value - potential.value after checking the two sides belong
// to the same instance (PairingError otherwise). Throws GapError unless
// |gap| <= tol * max(1, plan.value).
double duality_gap(const SolveResult& r, double tol = 1e-9);

// Exact optimum for tiny instances by enumerating the extreme points of the
// transport polytope: every vertex is supported on a spanning forest of the
// bipartite support graph, and the tree determines the plan by marginal
// elimination. Supports larger than 5 are refused (SizeError).
double oracle_enumerate(const CostMatrix& cost, const Distribution& mu1,
                        const Distribution& mu2);

// --- exact rational mode (supports <= 64) ------------------------------

Rational solve_primal_exact(const RationalMatrix& cost, const std::vector<Rational>& mu1,
                            const std::vector<Rational>& mu2);

// cost_is_metric skips the rational shortest-path closure.
Rational solve_dual_exact(const RationalMatrix& cost, const std::vector<Rational>& mu1,
                          const std::vector<Rational>& mu2, bool cost_is_metric);

Rational oracle_enumerate_exact(const RationalMatrix& cost, const std::vector<Rational>& mu1,
                                const std::vector<Rational>& mu2);

}  // namespace specwass
