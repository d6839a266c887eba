#include "specwass/space.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "specwass/errors.hpp"

namespace specwass {

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (axiom) {
    case Axiom::Diagonal:
      os << "nonzero diagonal at (" << i << "," << i << "), |d|=" << magnitude;
      break;
    case Axiom::Nonnegativity:
      os << "negative entry at (" << i << "," << j << "), d=" << -magnitude;
      break;
    case Axiom::Symmetry:
      os << "asymmetry at (" << i << "," << j << "), |d_ij - d_ji|=" << magnitude;
      break;
    case Axiom::Triangle:
      os << "triangle violation (" << i << "," << j << "," << k << "), excess=" << magnitude;
      break;
  }
  return os.str();
}

std::vector<MetricViolation> validate_metric(const Matrix& m, double tol) {
  if (!m.square()) throw ShapeError("validate_metric: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<MetricViolation> report;
  using Axiom = MetricViolation::Axiom;

  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m(i, i)) > tol)
      report.push_back({Axiom::Diagonal, i, i, 0, std::abs(m(i, i))});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) < -tol || m(j, i) < -tol) {
        const double neg = std::min(m(i, j), m(j, i));
        report.push_back({Axiom::Nonnegativity, i, j, 0, -neg});
      }
      if (std::abs(m(i, j) - m(j, i)) > tol)
        report.push_back({Axiom::Symmetry, i, j, 0, std::abs(m(i, j) - m(j, i))});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double excess = m(i, k) - (m(i, j) + m(j, k));
        if (excess > tol)
          report.push_back({Axiom::Triangle, i, j, k, excess});
      }
    }
  }
  return report;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<Point> points, Matrix dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
  const std::size_t n = points_.size();
  if (!dist_.square() || dist_.rows() != n)
    throw ShapeError("FiniteMetricSpace: distance matrix must be n x n");

  std::unordered_set<std::string> ids;
  for (const auto& p : points_) {
    if (!ids.insert(p.id).second)
      throw Error("FiniteMetricSpace: duplicate point id '" + p.id + "'");
  }
  const std::size_t dim = n ? points_[0].coords.size() : 0;
  for (const auto& p : points_) {
    if (p.coords.size() != dim)
      throw ShapeError("FiniteMetricSpace: coords must be absent everywhere or "
                       "present everywhere with equal dimension");
  }

  constexpr double tol = 1e-12;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist_(i, i)) > tol)
      throw Error("FiniteMetricSpace: nonzero diagonal at index " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist_(i, j) < -tol)
        throw Error("FiniteMetricSpace: negative distance at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
      if (std::abs(dist_(i, j) - dist_(j, i)) > tol)
        throw Error("FiniteMetricSpace: asymmetric distances at (" + std::to_string(i) + "," +
                    std::to_string(j) + ")");
    }
  }
}

bool FiniteMetricSpace::is_euclidean(double tol) const {
  if (!has_coords()) return false;
  const std::size_t n = size();
  const std::size_t dim = coord_dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double t = points_[i].coords[d] - points_[j].coords[d];
        s += t * t;
      }
      if (std::abs(std::sqrt(s) - dist_(i, j)) > tol) return false;
    }
  }
  return true;
}

FiniteMetricSpace build_grid_line(std::size_t n, double a, double b) {
  if (n < 2) throw SizeError("build_grid_line: need n >= 2");
  if (!(a < b)) throw ParamError("build_grid_line: need a < b");
  std::vector<Point> pts(n);
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i].id = "x" + std::to_string(i);
    pts[i].coords = {a + static_cast<double>(i) * step};
  }
  Matrix d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = std::abs(pts[i].coords[0] - pts[j].coords[0]);
  return FiniteMetricSpace(std::move(pts), std::move(d));
}

FiniteMetricSpace build_grid_circle(std::size_t n) {
  if (n < 3) throw SizeError("build_grid_circle: need n >= 3");
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i].id = "c" + std::to_string(i);
  Matrix d(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double s = std::abs(static_cast<double>(i) - static_cast<double>(j)) /
                       static_cast<double>(n);
      d(i, j) = std::min(s, 1.0 - s);
    }
  }
  return FiniteMetricSpace(std::move(pts), std::move(d));
}

}  // namespace specwass
