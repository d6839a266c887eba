#pragma once

#include <cstddef>
#include <vector>

#include "specwass/matrix.hpp"
#include "specwass/space.hpp"

namespace specwass {

// Grid discretization of the almost-commutative product M x I, metrized so
// that horizontal slices carry the base metric and the whole fiber has
// length 1/norm_DI (per-point 1/profile[x] under a Higgs fluctuation).
//
// The graph on base x levels has, per level, an edge for every base pair at
// the base distance; vertical edges of one level step; and for every base
// pair the two diagonals of each one-level cell, weighted by the hypotenuse
// of the cell's side lengths. Distances that have exact closed values are
// patched in after the shortest-path sweep: equal-level pairs equal the base
// distance (every path dominates its horizontal projection) and, with no
// Higgs profile, equal-column pairs cost their level fraction of the fiber
// (any horizontal excursion only adds length).
class TwoSheetSpace {
 public:
  TwoSheetSpace(FiniteMetricSpace base, double norm_di, std::size_t fiber_points,
                std::vector<double> higgs);

  const FiniteMetricSpace& base() const { return base_; }
  double norm_di() const { return norm_di_; }
  std::size_t fiber_points() const { return fiber_points_; }
  bool has_higgs() const { return !higgs_.empty(); }
  const std::vector<double>& higgs() const { return higgs_; }

  std::size_t base_size() const { return base_.size(); }
  std::size_t node_count() const { return base_.size() * fiber_points_; }
  std::size_t node(std::size_t base_i, std::size_t level) const {
    return level * base_.size() + base_i;
  }
  std::size_t level_of(std::size_t node) const { return node / base_.size(); }
  std::size_t base_of(std::size_t node) const { return node % base_.size(); }

  // 1 / ||D_I + H(x)||, the local fiber scale.
  double fiber_scale(std::size_t base_i) const {
    return 1.0 / (higgs_.empty() ? norm_di_ : higgs_[base_i]);
  }

  // Shortest-path distances from one node to all nodes (no patches).
  std::vector<double> geodesics_from(std::size_t src) const;
  // Point-to-point geodesic with the exact-value patches applied.
  double geodesic(std::size_t a, std::size_t b) const;

  // The 2n boundary nodes (level 0, then level m-1) as a metric space.
  FiniteMetricSpace boundary_space() const;

  // The full n*m product space with its distance matrix. All-pairs Dijkstra;
  // intended for modest grids.
  FiniteMetricSpace metric_space() const;

 private:
  double patched(std::size_t a, std::size_t b, double dijkstra_value) const;

  FiniteMetricSpace base_;
  double norm_di_;
  std::size_t fiber_points_;
  std::vector<double> higgs_;
  double level_step_;  // fiber-coordinate step 1/(m-1)
};

// Builder per the product-metric recipe; higgs, when present, gives
// ||D_I + H(x)|| per base point and replaces the constant norm_DI on
// vertical edges.
TwoSheetSpace build_two_sheet(const FiniteMetricSpace& base, double norm_di,
                              std::size_t fiber_points,
                              const std::vector<double>* higgs = nullptr);

}  // namespace specwass
