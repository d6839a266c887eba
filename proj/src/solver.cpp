#include "specwass/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specwass/errors.hpp"
#include "specwass/transport_simplex.hpp"

namespace specwass {

namespace {

using boost::multiprecision::cpp_int;

void check_instance(const CostMatrix& cost, const Distribution& mu1, const Distribution& mu2) {
  if (mu1.size() != mu2.size() || mu1.size() != cost.size())
    throw ShapeError("solver: cost and distributions must agree in dimension");
}

double float_tol(const CostMatrix& cost) {
  double maxc = 1.0;
  for (double c : cost.matrix().data()) maxc = std::max(maxc, c);
  return 1e-12 * maxc;
}

// Directed min-plus closure with zero diagonal: the cost of the cheapest
// relay chain, which is what the pairwise difference constraints actually
// bound.
Matrix shortest_path_closure(const Matrix& c) {
  const std::size_t n = c.rows();
  Matrix d = c;
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d(i, k);
      for (std::size_t j = 0; j < n; ++j)
        if (dik + d(k, j) < d(i, j)) d(i, j) = dik + d(k, j);
    }
  return d;
}

template <class T>
Mat<T> rational_closure(const Mat<T>& c) {
  const std::size_t n = c.rows();
  Mat<T> d = c;
  for (std::size_t i = 0; i < n; ++i) d(i, i) = T{};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const T via = d(i, k) + d(k, j);
        if (via < d(i, j)) d(i, j) = via;
      }
  return d;
}

template <class T>
std::vector<std::size_t> support_of(const std::vector<T>& w) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] > T{}) s.push_back(i);
  return s;
}

// Spanning-forest enumeration over the complete bipartite support graph.
// Recursion over the arc list with a rollback union-find; complete trees are
// priced by leaf elimination and pruned when any flow turns negative.
template <class T>
class ForestEnumerator {
 public:
  ForestEnumerator(std::size_t r, std::size_t c, const std::vector<T>& supply,
                   const std::vector<T>& demand, const Mat<T>& cost, T feas_tol)
      : R_(r), C_(c), supply_(supply), demand_(demand), cost_(cost), feas_tol_(feas_tol) {}

  T run() {
    const std::size_t nodes = R_ + C_;
    parent_.resize(nodes);
    std::iota(parent_.begin(), parent_.end(), 0);
    rank_.assign(nodes, 0);
    chosen_.clear();
    found_ = false;
    recurse(0, nodes - 1);
    if (!found_) throw Error("oracle: no feasible spanning tree found");
    return best_;
  }

 private:
  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    trail_.push_back({b, rank_[a]});
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  void undo() {
    // Strict LIFO discipline: at undo time parent_[child] is still the root
    // this union attached it to.
    const auto [child, old_rank] = trail_.back();
    trail_.pop_back();
    rank_[parent_[child]] = old_rank;
    parent_[child] = child;
  }

  void recurse(std::size_t next_arc, std::size_t remaining_needed) {
    if (remaining_needed == 0) {
      price_current_tree();
      return;
    }
    const std::size_t arcs = R_ * C_;
    if (arcs - next_arc < remaining_needed) return;
    // Skip this arc.
    recurse(next_arc + 1, remaining_needed);
    // Or take it, if it does not close a cycle.
    const std::size_t r = next_arc / C_;
    const std::size_t c = next_arc % C_;
    if (unite(r, R_ + c)) {
      chosen_.push_back(next_arc);
      recurse(next_arc + 1, remaining_needed - 1);
      chosen_.pop_back();
      undo();
    }
  }

  void price_current_tree() {
    const std::size_t nodes = R_ + C_;
    balance_.assign(nodes, T{});
    for (std::size_t i = 0; i < R_; ++i) balance_[i] = supply_[i];
    for (std::size_t j = 0; j < C_; ++j) balance_[R_ + j] = demand_[j];

    degree_.assign(nodes, 0);
    for (const std::size_t a : chosen_) {
      ++degree_[a / C_];
      ++degree_[R_ + a % C_];
    }
    used_.assign(chosen_.size(), 0);

    std::vector<std::size_t> leaves;
    for (std::size_t v = 0; v < nodes; ++v)
      if (degree_[v] == 1) leaves.push_back(v);

    T total{};
    std::size_t processed = 0;
    while (!leaves.empty()) {
      const std::size_t v = leaves.back();
      leaves.pop_back();
      if (degree_[v] != 1) continue;
      std::size_t arc_pos = 0, arc_id = 0;
      for (std::size_t t = 0; t < chosen_.size(); ++t) {
        if (used_[t]) continue;
        const std::size_t a = chosen_[t];
        if (a / C_ == v || R_ + a % C_ == v) {
          arc_pos = t;
          arc_id = a;
          break;
        }
      }
      const std::size_t r = arc_id / C_;
      const std::size_t cn = R_ + arc_id % C_;
      const T flow = balance_[v];
      if (flow < -feas_tol_) return;  // infeasible vertex, skip tree
      total += cost_(r, arc_id % C_) * flow;
      used_[arc_pos] = 1;
      ++processed;
      const std::size_t other = (v == r) ? cn : r;
      balance_[other] -= flow;
      balance_[v] = T{};
      --degree_[v];
      --degree_[other];
      if (degree_[other] == 1) leaves.push_back(other);
    }
    if (processed != chosen_.size()) return;
    if (!found_ || total < best_) {
      found_ = true;
      best_ = total;
    }
  }

  std::size_t R_, C_;
  const std::vector<T>& supply_;
  const std::vector<T>& demand_;
  const Mat<T>& cost_;
  T feas_tol_;

  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
  std::vector<std::pair<std::size_t, std::size_t>> trail_;
  std::vector<std::size_t> chosen_;
  std::vector<T> balance_;
  std::vector<std::size_t> degree_;
  std::vector<char> used_;
  bool found_ = false;
  T best_{};
};

}  // namespace

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> r(n, 0.0);
  for (const auto& e : entries) r[e.from] += e.mass;
  return r;
}

std::vector<double> TransportPlan::col_sums() const {
  std::vector<double> c(n, 0.0);
  for (const auto& e : entries) c[e.to] += e.mass;
  return c;
}

Matrix TransportPlan::to_dense() const {
  Matrix m(n, n, 0.0);
  for (const auto& e : entries) m(e.from, e.to) += e.mass;
  return m;
}

double DualPotential::max_violation(const CostMatrix& cost) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j)
      worst = std::max(worst, f[i] - f[j] - cost(i, j));
  return worst;
}

TransportPlan solve_primal(const CostMatrix& cost, const Distribution& mu1,
                           const Distribution& mu2) {
  check_instance(cost, mu1, mu2);
  const std::size_t n = cost.size();
  TransportPlan plan;
  plan.n = n;

  // Identity transport: with a vanishing diagonal the diagonal coupling of
  // equal marginals costs zero, which no nonnegative cost can beat.
  if (cost.vanishing_diagonal() && mu1.weights() == mu2.weights()) {
    for (std::size_t i : mu1.support()) plan.entries.push_back({i, i, mu1[i]});
    plan.value = 0.0;
    return plan;
  }

  const auto s1 = mu1.support();
  const auto s2 = mu2.support();
  std::vector<double> supply(s1.size()), demand(s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) supply[i] = mu1[s1[i]];
  for (std::size_t j = 0; j < s2.size(); ++j) demand[j] = mu2[s2[j]];

  const auto sub_cost = [&](std::size_t r, std::size_t c) { return cost(s1[r], s2[c]); };
  auto sol = detail::solve_transport<double>(std::move(supply), std::move(demand), sub_cost,
                                             float_tol(cost));
  for (const auto& a : sol.basis)
    if (a.flow > 0.0) plan.entries.push_back({s1[a.row], s2[a.col], a.flow});
  plan.value = sol.value;
  return plan;
}

DualPotential solve_dual(const CostMatrix& cost, const Distribution& mu1,
                         const Distribution& mu2) {
  check_instance(cost, mu1, mu2);
  const std::size_t n = cost.size();

  DualPotential pot;
  pot.delta.resize(n);
  for (std::size_t i = 0; i < n; ++i) pot.delta[i] = mu1[i] - mu2[i];

  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    if (pot.delta[i] > 0.0) pos.push_back(i);
    if (pot.delta[i] < 0.0) neg.push_back(i);
  }

  pot.f.assign(n, 0.0);
  if (pos.empty() || neg.empty()) {
    pot.value = 0.0;  // mu1 == mu2 up to sign pattern; f = 0 is optimal
    return pot;
  }

  Matrix closed;
  const Matrix* eff = &cost.matrix();
  if (!cost.metric()) {
    closed = shortest_path_closure(cost.matrix());
    eff = &closed;
  }

  std::vector<double> supply(pos.size()), demand(neg.size());
  for (std::size_t i = 0; i < pos.size(); ++i) supply[i] = pot.delta[pos[i]];
  for (std::size_t j = 0; j < neg.size(); ++j) demand[j] = -pot.delta[neg[j]];

  const auto sub_cost = [&](std::size_t r, std::size_t c) { return (*eff)(pos[r], neg[c]); };
  auto sol = detail::solve_transport<double>(std::move(supply), std::move(demand), sub_cost,
                                             float_tol(cost));

  // Node prices tight on the optimal tree give a feasible merged potential on
  // the (disjoint) reduced supports; everything else gets the tight
  // 1-Lipschitz extension f(x) = min_s f(s) + c(x, s).
  std::vector<char> fixed(n, 0);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    pot.f[pos[i]] = sol.row_price[i];
    fixed[pos[i]] = 1;
  }
  for (std::size_t j = 0; j < neg.size(); ++j) {
    pot.f[neg[j]] = -sol.col_price[j];
    fixed[neg[j]] = 1;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (fixed[x]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < n; ++s)
      if (fixed[s]) best = std::min(best, pot.f[s] + (*eff)(x, s));
    pot.f[x] = best;
  }

  // Gauge: vanish at the lowest-index point carrying any mass.
  std::size_t anchor = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (mu1[i] > 0.0 || mu2[i] > 0.0) {
      anchor = i;
      break;
    }
  const double shift = pot.f[anchor];
  for (double& v : pot.f) v -= shift;

  double val = 0.0;
  for (std::size_t i = 0; i < n; ++i) val += pot.f[i] * pot.delta[i];
  pot.value = val;
  return pot;
}

SolveResult solve_both(const CostMatrix& cost, const Distribution& mu1, const Distribution& mu2) {
  SolveResult r;
  r.plan = solve_primal(cost, mu1, mu2);
  r.potential = solve_dual(cost, mu1, mu2);
  r.gap = r.plan.value - r.potential.value;
  return r;
}

SolveResult solve_jump(const CostMatrix& cost, const Distribution& mu1, const Distribution& mu2) {
  return solve_both(cost, mu1, mu2);
}

double duality_gap(const SolveResult& r, double tol) {
  const auto rows = r.plan.row_sums();
  const auto cols = r.plan.col_sums();
  if (rows.size() != r.potential.delta.size())
    throw PairingError("duality_gap: plan and potential have different dimensions");
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (std::abs((rows[i] - cols[i]) - r.potential.delta[i]) > 1e-9)
      throw PairingError("duality_gap: plan marginals do not match the potential's instance");
  const double gap = r.plan.value - r.potential.value;
  if (std::abs(gap) > tol * std::max(1.0, r.plan.value))
    throw GapError("duality_gap: |gap| = " + std::to_string(std::abs(gap)) +
                   " exceeds tolerance");
  return gap;
}

double oracle_enumerate(const CostMatrix& cost, const Distribution& mu1,
                        const Distribution& mu2) {
  check_instance(cost, mu1, mu2);
  const auto s1 = mu1.support();
  const auto s2 = mu2.support();
  if (s1.size() > 5 || s2.size() > 5)
    throw SizeError("oracle_enumerate: supports larger than 5 are refused");
  std::vector<double> supply(s1.size()), demand(s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) supply[i] = mu1[s1[i]];
  for (std::size_t j = 0; j < s2.size(); ++j) demand[j] = mu2[s2[j]];
  Matrix sub(s1.size(), s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i)
    for (std::size_t j = 0; j < s2.size(); ++j) sub(i, j) = cost(s1[i], s2[j]);
  ForestEnumerator<double> e(s1.size(), s2.size(), supply, demand, sub, 1e-12);
  return e.run();
}

namespace {

void check_exact_instance(const RationalMatrix& cost, const std::vector<Rational>& mu1,
                          const std::vector<Rational>& mu2) {
  if (mu1.size() != mu2.size() || !cost.square() || cost.rows() != mu1.size())
    throw ShapeError("exact solver: cost and distributions must agree in dimension");
  Rational s1{}, s2{};
  for (const auto& w : mu1) {
    if (w < 0) throw ParamError("exact solver: negative weight");
    s1 += w;
  }
  for (const auto& w : mu2) {
    if (w < 0) throw ParamError("exact solver: negative weight");
    s2 += w;
  }
  if (s1 != s2) throw ParamError("exact solver: marginals must balance exactly");
}

}  // namespace

Rational solve_primal_exact(const RationalMatrix& cost, const std::vector<Rational>& mu1,
                            const std::vector<Rational>& mu2) {
  check_exact_instance(cost, mu1, mu2);
  const auto s1 = support_of(mu1);
  const auto s2 = support_of(mu2);
  if (s1.size() > 64 || s2.size() > 64)
    throw SizeError("solve_primal_exact: rational mode is limited to supports <= 64");
  if (s1.empty()) return Rational{};
  std::vector<Rational> supply(s1.size()), demand(s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) supply[i] = mu1[s1[i]];
  for (std::size_t j = 0; j < s2.size(); ++j) demand[j] = mu2[s2[j]];
  const auto sub_cost = [&](std::size_t r, std::size_t c) { return cost(s1[r], s2[c]); };
  auto sol = detail::solve_transport<Rational>(std::move(supply), std::move(demand), sub_cost,
                                               Rational{});
  return sol.value;
}

Rational solve_dual_exact(const RationalMatrix& cost, const std::vector<Rational>& mu1,
                          const std::vector<Rational>& mu2, bool cost_is_metric) {
  check_exact_instance(cost, mu1, mu2);
  const std::size_t n = mu1.size();
  std::vector<Rational> delta(n);
  for (std::size_t i = 0; i < n; ++i) delta[i] = mu1[i] - mu2[i];
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    if (delta[i] > 0) pos.push_back(i);
    if (delta[i] < 0) neg.push_back(i);
  }
  if (pos.empty()) return Rational{};
  if (pos.size() > 64 || neg.size() > 64)
    throw SizeError("solve_dual_exact: rational mode is limited to supports <= 64");

  RationalMatrix closed;
  const RationalMatrix* eff = &cost;
  if (!cost_is_metric) {
    closed = rational_closure(cost);
    eff = &closed;
  }
  std::vector<Rational> supply(pos.size()), demand(neg.size());
  for (std::size_t i = 0; i < pos.size(); ++i) supply[i] = delta[pos[i]];
  for (std::size_t j = 0; j < neg.size(); ++j) demand[j] = -delta[neg[j]];
  const auto sub_cost = [&](std::size_t r, std::size_t c) { return (*eff)(pos[r], neg[c]); };
  auto sol = detail::solve_transport<Rational>(std::move(supply), std::move(demand), sub_cost,
                                               Rational{});
  return sol.value;
}

Rational oracle_enumerate_exact(const RationalMatrix& cost, const std::vector<Rational>& mu1,
                                const std::vector<Rational>& mu2) {
  check_exact_instance(cost, mu1, mu2);
  const auto s1 = support_of(mu1);
  const auto s2 = support_of(mu2);
  if (s1.size() > 5 || s2.size() > 5)
    throw SizeError("oracle_enumerate_exact: supports larger than 5 are refused");

  // Clear denominators once so the tree pricing runs in integers.
  cpp_int wl = 1, cl = 1;
  for (const auto& i : s1) wl = boost::multiprecision::lcm(wl, denominator(mu1[i]));
  for (const auto& j : s2) wl = boost::multiprecision::lcm(wl, denominator(mu2[j]));
  for (const auto& i : s1)
    for (const auto& j : s2) cl = boost::multiprecision::lcm(cl, denominator(cost(i, j)));

  std::vector<cpp_int> supply(s1.size()), demand(s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i)
    supply[i] = numerator(mu1[s1[i]] * Rational(wl));
  for (std::size_t j = 0; j < s2.size(); ++j)
    demand[j] = numerator(mu2[s2[j]] * Rational(wl));
  Mat<cpp_int> sub(s1.size(), s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i)
    for (std::size_t j = 0; j < s2.size(); ++j)
      sub(i, j) = numerator(cost(s1[i], s2[j]) * Rational(cl));

  ForestEnumerator<cpp_int> e(s1.size(), s2.size(), supply, demand, sub, cpp_int{});
  const cpp_int best = e.run();
  return Rational(best) / (Rational(wl) * Rational(cl));
}

}  // namespace specwass
