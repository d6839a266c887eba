#pragma once

#include <cstddef>
#include <vector>

#include "specwass/distribution.hpp"
#include "specwass/shapes.hpp"
#include "specwass/space.hpp"

namespace specwass {

// Weighted point on the real line.
struct Atom {
  double x;
  double w;
};

// Cumulative distribution of the signed measure mu1 - mu2: delta[k] is the
// running mass on [breakpoints[k], breakpoints[k+1]); it returns to zero
// after the last breakpoint when both measures carry total mass one.
struct CumulativeDifference {
  std::vector<double> breakpoints;
  std::vector<double> delta;
};

CumulativeDifference cumulative_difference(std::vector<Atom> mu1, std::vector<Atom> mu2);

// Exact 1-D optimal transport cost between atomic measures: the integral of
// |Delta(z)| dz over consecutive breakpoints.
double wasserstein_1d(const std::vector<Atom>& mu1, const std::vector<Atom>& mu2);
double wasserstein_1d(const FiniteMetricSpace& line, const Distribution& mu1,
                      const Distribution& mu2);

// W(delta_x, mu) = E(d(x, .); mu); the first moment exposed as a distance.
double distance_to_pure(const FiniteMetricSpace& space, std::size_t x_index,
                        const Distribution& mu);

// E(d; mu1 x mu2), the independent-coupling upper bound.
double product_upper_bound(const FiniteMetricSpace& space, const Distribution& mu1,
                           const Distribution& mu2);

// |barycenter(mu1) - barycenter(mu2)|. Requires an isometric Euclidean
// embedding (checked); refuses otherwise rather than silently using chords.
double barycenter_lower_bound(const FiniteMetricSpace& space, const Distribution& mu1,
                              const Distribution& mu2);

// Wave packet: a width-sigma, x-centered copy of a fixed unit-mass shape.
// width 0 designates the pure state at the center.
struct WavePacket {
  ShapeSampler shape;
  std::vector<double> center;
  double width = 0.0;

  WavePacket(ShapeSampler shape, std::vector<double> center, double width);

  // Density of the rescaled packet at z (1-D, width > 0).
  double density_at(double z) const;
};

// W(Psi_{sigma,x}, Psi_{sigma',y}) = integral of |x - y + (sigma-sigma') xi|
// psi(xi) d xi. Equal widths short-circuit to |x - y| in any dimension; the
// quadrature path (midpoint rule) is 1-D.
double wavepacket_distance(const ShapeSampler& shape, double sigma, double sigma_p,
                           const std::vector<double>& x, const std::vector<double>& y,
                           std::size_t quadrature_n = 512);
double wavepacket_distance(const WavePacket& a, const WavePacket& b,
                           std::size_t quadrature_n = 512);

// The potential attaining the supremum: affine along (x - y) for equal
// widths, otherwise the cone |z - alpha| with apex
// alpha = (sigma' x - sigma y) / (sigma' - sigma).
struct PotentialDescriptor {
  enum class Kind { Affine, Cone };
  Kind kind;
  std::vector<double> direction;  // affine
  std::vector<double> apex;       // cone

  double evaluate(const std::vector<double>& z) const;
};

PotentialDescriptor optimal_potential(const std::vector<double>& x, const std::vector<double>& y,
                                      double sigma, double sigma_p);

// Delta(h) = Psi_{sigma,x}(h) - Psi_{sigma',y}(h) by quadrature on the shape
// grid; certifies that the descriptor attains wavepacket_distance.
double potential_gain(const PotentialDescriptor& h, const ShapeSampler& shape, double sigma,
                      double sigma_p, const std::vector<double>& x, const std::vector<double>& y,
                      std::size_t quadrature_n = 512);

// Convex combination (1 - t) mu0 + t mu1.
Distribution interpolate(const Distribution& mu0, const Distribution& mu1, double t);

}  // namespace specwass
