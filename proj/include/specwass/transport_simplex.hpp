#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "specwass/errors.hpp"

namespace specwass::detail {

// Balanced transportation problem
//
//   min  sum_{i,j} c(i,j) x(i,j)
//   s.t. sum_j x(i,j) = supply_i,  sum_i x(i,j) = demand_j,  x >= 0
//
// solved by the tree-based transportation simplex (MODI pivoting) on the
// dense bipartite arc set. T is double (zero_tol > 0) or an exact rational
// type (zero_tol == 0). The initial basis is the northwest-corner staircase,
// which for sorted 1-D instances is already the monotone optimal plan.
//
// Entering arcs come from a block scan (most negative reduced cost within
// the first block that has one). A long run of degenerate pivots switches
// the pivot rule to Bland's (first negative entering, lowest-id leaving),
// which guarantees termination.

template <class T>
struct BasicArc {
  std::size_t row;
  std::size_t col;
  T flow;
};

template <class T>
struct TransportSolution {
  std::vector<BasicArc<T>> basis;  // spanning tree, zero flows included
  T value{};
  std::vector<T> row_price;  // u
  std::vector<T> col_price;  // v;  u_i + v_j = c(i,j) on basic arcs
  long pivots = 0;
};

template <class T, class CostFn>
class TransportSimplex {
 public:
  TransportSimplex(std::vector<T> supply, std::vector<T> demand, CostFn cost, T zero_tol)
      : R_(supply.size()),
        C_(demand.size()),
        N_(R_ + C_),
        supply_(std::move(supply)),
        demand_(std::move(demand)),
        cost_(cost),
        tol_(zero_tol) {
    if (R_ == 0 || C_ == 0)
      throw ShapeError("transport simplex: empty supply or demand side");
  }

  TransportSolution<T> run() {
    init_northwest();
    rebuild_tree();

    const long hard_cap = 2000000L + 4000L * static_cast<long>(N_);
    const long stall_limit = 16L * static_cast<long>(N_) + 64L;
    long pivots = 0;
    long stall = 0;
    bool bland = false;

    while (true) {
      std::size_t er = 0, ec = 0;
      const bool found = bland ? entering_bland(er, ec) : entering_block(er, ec);
      if (!found) break;
      const bool degenerate = pivot(er, ec);
      ++pivots;
      stall = degenerate ? stall + 1 : 0;
      if (!bland && stall > stall_limit) bland = true;
      if (pivots > hard_cap)
        throw Error("transport simplex: pivot cap exceeded");
    }

    TransportSolution<T> out;
    out.basis = basis_;
    out.row_price = u_;
    out.col_price = v_;
    out.pivots = pivots;
    T total{};
    for (const auto& a : basis_) total += cost_(a.row, a.col) * a.flow;
    out.value = total;
    return out;
  }

 private:
  void init_northwest() {
    basis_.clear();
    basis_.reserve(N_ - 1);
    std::vector<T> a = supply_;
    std::vector<T> b = demand_;
    std::size_t i = 0, j = 0;
    while (true) {
      const T t = std::min(a[i], b[j]);
      basis_.push_back({i, j, t});
      a[i] -= t;
      b[j] -= t;
      if (i == R_ - 1 && j == C_ - 1) break;
      // Advance exactly one side per step so the staircase stays a tree with
      // R + C - 1 arcs even through degenerate ties. Float residue from an
      // imperfectly balanced instance parks on the last row/column.
      if (a[i] <= T{} && i < R_ - 1)
        ++i;
      else if (j < C_ - 1)
        ++j;
      else
        ++i;
    }
  }

  // Recomputes adjacency, parent pointers, depths and node prices from the
  // current basis. O(N) per pivot, which is fine at desk scale.
  void rebuild_tree() {
    adj_.assign(N_, {});
    for (std::size_t t = 0; t < basis_.size(); ++t) {
      adj_[basis_[t].row].push_back(t);
      adj_[R_ + basis_[t].col].push_back(t);
    }
    parent_.assign(N_, kNone);
    parent_arc_.assign(N_, kNone);
    depth_.assign(N_, 0);
    u_.assign(R_, T{});
    v_.assign(C_, T{});

    // BFS from row node 0 with gauge u_0 = 0.
    std::vector<std::size_t> queue{0};
    std::vector<char> seen(N_, 0);
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      for (const std::size_t t : adj_[node]) {
        const auto& arc = basis_[t];
        const std::size_t other = (node == arc.row) ? R_ + arc.col : arc.row;
        if (seen[other]) continue;
        seen[other] = 1;
        parent_[other] = node;
        parent_arc_[other] = t;
        depth_[other] = depth_[node] + 1;
        if (other >= R_)
          v_[other - R_] = cost_(arc.row, arc.col) - u_[arc.row];
        else
          u_[other] = cost_(arc.row, arc.col) - v_[arc.col];
        queue.push_back(other);
      }
    }
    if (queue.size() != N_)
      throw Error("transport simplex: basis lost the spanning-tree invariant");
  }

  bool entering_block(std::size_t& er, std::size_t& ec) {
    const std::size_t arcs = R_ * C_;
    const std::size_t block =
        std::max<std::size_t>(64, static_cast<std::size_t>(std::sqrt(static_cast<double>(arcs))));
    std::size_t scanned = 0;
    T best{};
    bool have = false;
    std::size_t best_r = 0, best_c = 0;
    while (scanned < arcs) {
      const std::size_t stop = std::min(arcs, scanned + block);
      for (; scanned < stop; ++scanned) {
        const std::size_t a = (scan_from_ + scanned) % arcs;
        const std::size_t r = a / C_;
        const std::size_t c = a % C_;
        const T rc = cost_(r, c) - u_[r] - v_[c];
        if (rc < -tol_ && (!have || rc < best)) {
          have = true;
          best = rc;
          best_r = r;
          best_c = c;
        }
      }
      if (have) {
        scan_from_ = (scan_from_ + scanned) % arcs;
        er = best_r;
        ec = best_c;
        return true;
      }
    }
    return false;
  }

  bool entering_bland(std::size_t& er, std::size_t& ec) {
    for (std::size_t r = 0; r < R_; ++r)
      for (std::size_t c = 0; c < C_; ++c)
        if (cost_(r, c) - u_[r] - v_[c] < -tol_) {
          er = r;
          ec = c;
          return true;
        }
    return false;
  }

  // Brings (er, ec) into the basis. Returns true when the pivot was
  // degenerate (zero flow change).
  bool pivot(std::size_t er, std::size_t ec) {
    // Node path from row er to col node ec through the tree.
    std::size_t x = er;
    std::size_t y = R_ + ec;
    std::vector<std::size_t> up_x, up_y;  // arc ids climbing to the LCA
    while (depth_[x] > depth_[y]) {
      up_x.push_back(parent_arc_[x]);
      x = parent_[x];
    }
    while (depth_[y] > depth_[x]) {
      up_y.push_back(parent_arc_[y]);
      y = parent_[y];
    }
    while (x != y) {
      up_x.push_back(parent_arc_[x]);
      x = parent_[x];
      up_y.push_back(parent_arc_[y]);
      y = parent_[y];
    }

    // Arc positions along the full cycle path er -> ... -> ec; signs
    // alternate starting with -1 on the arc incident to er.
    cycle_arcs_.clear();
    cycle_sign_.clear();
    const std::size_t total = up_x.size() + up_y.size();
    for (std::size_t t = 0; t < up_x.size(); ++t) {
      cycle_arcs_.push_back(up_x[t]);
      cycle_sign_.push_back(t % 2 == 0 ? -1 : +1);
    }
    for (std::size_t s = 0; s < up_y.size(); ++s) {
      const std::size_t pos = total - 1 - s;
      cycle_arcs_.push_back(up_y[s]);
      cycle_sign_.push_back(pos % 2 == 0 ? -1 : +1);
    }

    // Leaving arc: min flow among the decreasing arcs, lowest arc identity
    // on ties (keeps the Bland fallback sound).
    bool have = false;
    T theta{};
    std::size_t leave_pos = 0;
    for (std::size_t t = 0; t < cycle_arcs_.size(); ++t) {
      if (cycle_sign_[t] > 0) continue;
      const auto& arc = basis_[cycle_arcs_[t]];
      const std::size_t id = arc.row * C_ + arc.col;
      if (!have || arc.flow < theta ||
          (arc.flow == theta &&
           id < basis_[cycle_arcs_[leave_pos]].row * C_ + basis_[cycle_arcs_[leave_pos]].col)) {
        have = true;
        theta = arc.flow;
        leave_pos = t;
      }
    }
    if (!have) throw Error("transport simplex: unbounded pivot cycle");

    for (std::size_t t = 0; t < cycle_arcs_.size(); ++t) {
      auto& arc = basis_[cycle_arcs_[t]];
      if (cycle_sign_[t] > 0)
        arc.flow += theta;
      else
        arc.flow -= theta;
    }
    const bool degenerate = !(theta > T{});
    basis_[cycle_arcs_[leave_pos]] = {er, ec, theta};
    rebuild_tree();
    return degenerate;
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t R_, C_, N_;
  std::vector<T> supply_, demand_;
  CostFn cost_;
  T tol_;

  std::vector<BasicArc<T>> basis_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> parent_, parent_arc_;
  std::vector<std::size_t> depth_;
  std::vector<T> u_, v_;
  std::vector<std::size_t> cycle_arcs_;
  std::vector<int> cycle_sign_;
  std::size_t scan_from_ = 0;
};

template <class T, class CostFn>
TransportSolution<T> solve_transport(std::vector<T> supply, std::vector<T> demand, CostFn cost,
                                     T zero_tol) {
  TransportSimplex<T, CostFn> s(std::move(supply), std::move(demand), cost, zero_tol);
  return s.run();
}

}  // namespace specwass::detail
