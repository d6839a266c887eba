#include "specwass/two_sheet.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>

#include "specwass/errors.hpp"

namespace specwass {

TwoSheetSpace::TwoSheetSpace(FiniteMetricSpace base, double norm_di, std::size_t fiber_points,
                             std::vector<double> higgs)
    : base_(std::move(base)),
      norm_di_(norm_di),
      fiber_points_(fiber_points),
      higgs_(std::move(higgs)) {
  if (norm_di_ <= 0.0) throw ParamError("TwoSheetSpace: norm_DI must be positive");
  if (fiber_points_ < 2) throw SizeError("TwoSheetSpace: need at least 2 fiber points");
  if (!higgs_.empty()) {
    if (higgs_.size() != base_.size())
      throw ShapeError("TwoSheetSpace: higgs profile must have one value per base point");
    for (double h : higgs_)
      if (h <= 0.0) throw ParamError("TwoSheetSpace: higgs profile must be positive");
  }
  level_step_ = 1.0 / static_cast<double>(fiber_points_ - 1);
}

std::vector<double> TwoSheetSpace::geodesics_from(std::size_t src) const {
  const std::size_t n = base_.size();
  const std::size_t m = fiber_points_;
  const std::size_t N = node_count();
  if (src >= N) throw IndexError("TwoSheetSpace: node index out of range");

  std::vector<double> dist(N, std::numeric_limits<double>::infinity());
  dist[src] = 0.0;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.push({0.0, src});

  while (!pq.empty()) {
    const auto [d, node] = pq.top();
    pq.pop();
    if (d > dist[node]) continue;
    const std::size_t i = base_of(node);
    const std::size_t lvl = level_of(node);
    const double step_i = level_step_ * fiber_scale(i);

    const auto relax = [&](std::size_t to, double w) {
      const double nd = d + w;
      if (nd < dist[to]) {
        dist[to] = nd;
        pq.push({nd, to});
      }
    };

    // Horizontal: the base metric within the level.
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) relax(node + j - i, base_.dist(i, j));

    // Vertical and one-level diagonals.
    for (int dl = -1; dl <= 1; dl += 2) {
      if ((dl < 0 && lvl == 0) || (dl > 0 && lvl == m - 1)) continue;
      const std::size_t lto = lvl + static_cast<std::size_t>(dl);
      relax(this->node(i, lto), step_i);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double dij = base_.dist(i, j);
        const double side = 0.5 * (step_i + level_step_ * fiber_scale(j));
        relax(this->node(j, lto), std::sqrt(dij * dij + side * side));
      }
    }
  }
  return dist;
}

double TwoSheetSpace::patched(std::size_t a, std::size_t b, double dijkstra_value) const {
  const std::size_t ia = base_of(a), ib = base_of(b);
  const std::size_t la = level_of(a), lb = level_of(b);
  if (la == lb) return base_.dist(ia, ib);
  if (ia == ib && higgs_.empty()) {
    const double dl = static_cast<double>(la > lb ? la - lb : lb - la);
    return dl / static_cast<double>(fiber_points_ - 1) / norm_di_;
  }
  return dijkstra_value;
}

double TwoSheetSpace::geodesic(std::size_t a, std::size_t b) const {
  if (a >= node_count() || b >= node_count())
    throw IndexError("TwoSheetSpace: node index out of range");
  if (a == b) return 0.0;
  if (level_of(a) == level_of(b)) return base_.dist(base_of(a), base_of(b));
  if (base_of(a) == base_of(b) && higgs_.empty()) return patched(a, b, 0.0);
  return patched(a, b, geodesics_from(a)[b]);
}

namespace {

std::string node_id(const FiniteMetricSpace& base, std::size_t i, std::size_t level) {
  return base.point(i).id + "@" + std::to_string(level);
}

std::vector<double> node_coords(const FiniteMetricSpace& base, std::size_t i, double t_phys) {
  if (!base.has_coords()) return {};
  std::vector<double> c = base.point(i).coords;
  c.push_back(t_phys);
  return c;
}

}  // namespace

FiniteMetricSpace TwoSheetSpace::boundary_space() const {
  const std::size_t n = base_.size();
  const std::size_t top = fiber_points_ - 1;
  std::vector<std::size_t> nodes(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = node(i, 0);
    nodes[n + i] = node(i, top);
  }

  Matrix d(2 * n, 2 * n, 0.0);
  for (std::size_t a = 0; a < 2 * n; ++a) {
    const auto row = geodesics_from(nodes[a]);
    for (std::size_t b = a + 1; b < 2 * n; ++b) {
      const double v = patched(nodes[a], nodes[b], row[nodes[b]]);
      d(a, b) = v;
      d(b, a) = v;
    }
  }

  std::vector<Point> pts(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {node_id(base_, i, 0), node_coords(base_, i, 0.0)};
    pts[n + i] = {node_id(base_, i, top), node_coords(base_, i, 1.0 / norm_di_)};
  }
  return FiniteMetricSpace(std::move(pts), std::move(d));
}

FiniteMetricSpace TwoSheetSpace::metric_space() const {
  const std::size_t N = node_count();
  Matrix d(N, N, 0.0);
  for (std::size_t a = 0; a < N; ++a) {
    const auto row = geodesics_from(a);
    for (std::size_t b = a + 1; b < N; ++b) {
      const double v = patched(a, b, row[b]);
      d(a, b) = v;
      d(b, a) = v;
    }
  }
  std::vector<Point> pts(N);
  for (std::size_t a = 0; a < N; ++a) {
    const std::size_t i = base_of(a);
    const std::size_t lvl = level_of(a);
    const double t_phys =
        static_cast<double>(lvl) / static_cast<double>(fiber_points_ - 1) / norm_di_;
    pts[a] = {node_id(base_, i, lvl), node_coords(base_, i, t_phys)};
  }
  return FiniteMetricSpace(std::move(pts), std::move(d));
}

TwoSheetSpace build_two_sheet(const FiniteMetricSpace& base, double norm_di,
                              std::size_t fiber_points, const std::vector<double>* higgs) {
  return TwoSheetSpace(base, norm_di, fiber_points,
                       higgs ? *higgs : std::vector<double>{});
}

}  // namespace specwass
