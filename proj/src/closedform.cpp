#include "specwass/closedform.hpp"

#include <algorithm>
#include <cmath>

#include "specwass/errors.hpp"

namespace specwass {

namespace {

constexpr double kMassTol = 1e-9;

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

void check_same_space(const FiniteMetricSpace& space, const Distribution& a,
                      const Distribution& b) {
  if (a.size() != space.size() || b.size() != space.size())
    throw ShapeError("distributions do not match the space dimension");
}

void check_shape_normalized(const ShapeSampler& shape) {
  if (std::abs(shape.mass() - 1.0) > 1e-6)
    throw NormalizationError("shape '" + shape.name() + "' integrates to " +
                             std::to_string(shape.mass()) + ", expected 1 within 1e-6");
}

std::vector<Atom> atoms_of(const FiniteMetricSpace& line, const Distribution& d) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 0.0) atoms.push_back({line.point(i).coords[0], d[i]});
  return atoms;
}

}  // namespace

CumulativeDifference cumulative_difference(std::vector<Atom> mu1, std::vector<Atom> mu2) {
  if (mu1.empty() || mu2.empty())
    throw DegenerateError("cumulative_difference: empty support");

  double m1 = 0.0, m2 = 0.0;
  std::vector<std::pair<double, double>> signed_atoms;  // (x, +w / -w)
  for (const auto& a : mu1) {
    signed_atoms.emplace_back(a.x, a.w);
    m1 += a.w;
  }
  for (const auto& a : mu2) {
    signed_atoms.emplace_back(a.x, -a.w);
    m2 += a.w;
  }
  if (std::abs(m1 - m2) > kMassTol)
    throw ParamError("cumulative_difference: measures must carry equal mass");

  std::sort(signed_atoms.begin(), signed_atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  CumulativeDifference cd;
  double running = 0.0;
  for (std::size_t i = 0; i < signed_atoms.size(); ++i) {
    running += signed_atoms[i].second;
    if (i + 1 < signed_atoms.size() && signed_atoms[i + 1].first == signed_atoms[i].first)
      continue;
    cd.breakpoints.push_back(signed_atoms[i].first);
    cd.delta.push_back(running);
  }
  return cd;
}

double wasserstein_1d(const std::vector<Atom>& mu1, const std::vector<Atom>& mu2) {
  const CumulativeDifference cd = cumulative_difference(mu1, mu2);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cd.breakpoints.size(); ++k)
    total += std::abs(cd.delta[k]) * (cd.breakpoints[k + 1] - cd.breakpoints[k]);
  return total;
}

double wasserstein_1d(const FiniteMetricSpace& line, const Distribution& mu1,
                      const Distribution& mu2) {
  check_same_space(line, mu1, mu2);
  if (!line.has_coords() || line.coord_dim() != 1)
    throw UnsupportedSpaceError(
        "wasserstein_1d: space carries no 1-D coordinates (not a line grid)");
  return wasserstein_1d(atoms_of(line, mu1), atoms_of(line, mu2));
}

double distance_to_pure(const FiniteMetricSpace& space, std::size_t x_index,
                        const Distribution& mu) {
  return first_moment(space, mu, x_index);
}

double product_upper_bound(const FiniteMetricSpace& space, const Distribution& mu1,
                           const Distribution& mu2) {
  check_same_space(space, mu1, mu2);
  double s = 0.0;
  for (const std::size_t i : mu1.support())
    for (const std::size_t j : mu2.support()) s += space.dist(i, j) * mu1[i] * mu2[j];
  return s;
}

double barycenter_lower_bound(const FiniteMetricSpace& space, const Distribution& mu1,
                              const Distribution& mu2) {
  check_same_space(space, mu1, mu2);
  if (!space.has_coords())
    throw UnsupportedSpaceError("barycenter_lower_bound: space carries no coordinates");
  if (!space.is_euclidean())
    throw HypothesisError(
        "barycenter_lower_bound: distances do not match the Euclidean embedding "
        "(convex isometric embedding hypothesis fails)");
  return euclid(barycenter(space, mu1), barycenter(space, mu2));
}

WavePacket::WavePacket(ShapeSampler shape_, std::vector<double> center_, double width_)
    : shape(std::move(shape_)), center(std::move(center_)), width(width_) {
  if (width < 0.0) throw ParamError("WavePacket: width must be nonnegative");
  if (center.empty()) throw ShapeError("WavePacket: empty center");
  check_shape_normalized(shape);
}

double WavePacket::density_at(double z) const {
  if (center.size() != 1)
    throw UnsupportedSpaceError("WavePacket::density_at: 1-D packets only");
  if (width <= 0.0)
    throw DegenerateError("WavePacket::density_at: pure state has no density");
  return shape.density((z - center[0]) / width) / width;
}

double wavepacket_distance(const ShapeSampler& shape, double sigma, double sigma_p,
                           const std::vector<double>& x, const std::vector<double>& y,
                           std::size_t quadrature_n) {
  if (sigma < 0.0 || sigma_p < 0.0)
    throw ParamError("wavepacket_distance: widths must be nonnegative");
  if (x.size() != y.size() || x.empty())
    throw ShapeError("wavepacket_distance: centers must share a dimension");
  check_shape_normalized(shape);
  if (sigma == sigma_p) return euclid(x, y);  // shape independence

  if (quadrature_n < 64) throw ParamError("wavepacket_distance: need quadrature_n >= 64");
  if (x.size() != 1)
    throw UnsupportedSpaceError(
        "wavepacket_distance: unequal widths are integrated for 1-D shapes only");

  const double d = x[0] - y[0];
  const double spread = sigma - sigma_p;
  const double h = (shape.hi() - shape.lo()) / static_cast<double>(quadrature_n);
  double total = 0.0;
  for (std::size_t k = 0; k < quadrature_n; ++k) {
    const double xi = shape.lo() + (static_cast<double>(k) + 0.5) * h;
    total += std::abs(d + spread * xi) * shape.density(xi);
  }
  return total * h;
}

double wavepacket_distance(const WavePacket& a, const WavePacket& b, std::size_t quadrature_n) {
  if (a.shape.name() != b.shape.name())
    throw ParamError("wavepacket_distance: packets must share their shape");
  return wavepacket_distance(a.shape, a.width, b.width, a.center, b.center, quadrature_n);
}

double PotentialDescriptor::evaluate(const std::vector<double>& z) const {
  if (kind == Kind::Affine) {
    double s = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * direction[k];
    return s;
  }
  return euclid(z, apex);
}

PotentialDescriptor optimal_potential(const std::vector<double>& x, const std::vector<double>& y,
                                      double sigma, double sigma_p) {
  if (x.size() != y.size() || x.empty())
    throw ShapeError("optimal_potential: centers must share a dimension");
  if (sigma < 0.0 || sigma_p < 0.0)
    throw ParamError("optimal_potential: widths must be nonnegative");

  if (sigma == sigma_p) {
    const double norm = euclid(x, y);
    if (norm == 0.0)
      throw DegenerateError(
          "optimal_potential: coincident packets; every potential is optimal");
    PotentialDescriptor h{PotentialDescriptor::Kind::Affine, {}, {}};
    h.direction.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) h.direction[k] = (x[k] - y[k]) / norm;
    return h;
  }

  PotentialDescriptor h{PotentialDescriptor::Kind::Cone, {}, {}};
  h.apex.resize(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    h.apex[k] = (sigma_p * x[k] - sigma * y[k]) / (sigma_p - sigma);
  return h;
}

double potential_gain(const PotentialDescriptor& h, const ShapeSampler& shape, double sigma,
                      double sigma_p, const std::vector<double>& x, const std::vector<double>& y,
                      std::size_t quadrature_n) {
  check_shape_normalized(shape);
  if (h.kind == PotentialDescriptor::Kind::Affine) {
    // Psi_{s,x}(h) - Psi_{s',y}(h) = (x - y) . dir + (s - s') E(xi) dir; for
    // equal widths the shape term cancels and the gain is exactly |x - y|.
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * h.direction[k];
    if (sigma != sigma_p)
      throw ParamError("potential_gain: affine descriptor applies to equal widths");
    return s;
  }
  if (x.size() != 1 || y.size() != 1)
    throw UnsupportedSpaceError("potential_gain: cone gains are integrated in 1-D only");
  if (quadrature_n < 64) throw ParamError("potential_gain: need quadrature_n >= 64");

  const double hstep = (shape.hi() - shape.lo()) / static_cast<double>(quadrature_n);
  double total = 0.0;
  for (std::size_t k = 0; k < quadrature_n; ++k) {
    const double xi = shape.lo() + (static_cast<double>(k) + 0.5) * hstep;
    const double w = shape.density(xi);
    total += (h.evaluate({x[0] + sigma * xi}) - h.evaluate({y[0] + sigma_p * xi})) * w;
  }
  return total * hstep;
}

Distribution interpolate(const Distribution& mu0, const Distribution& mu1, double t) {
  if (mu0.size() != mu1.size()) throw ShapeError("interpolate: size mismatch");
  if (t < 0.0 || t > 1.0) throw ParamError("interpolate: t must lie in [0, 1]");
  std::vector<double> w(mu0.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - t) * mu0[i] + t * mu1[i];
  return Distribution(std::move(w), mu0.space_ref());
}

}  // namespace specwass
