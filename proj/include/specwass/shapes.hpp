#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace specwass {

// Unit-mass density on a declared interval. Presets are normalized
// analytically; table shapes are normalized exactly at load time, so
// mass() reports the true integral rather than a quadrature estimate.
class ShapeSampler {
 public:
  ShapeSampler(std::string name, double lo, double hi, std::function<double(double)> pdf,
               double mass);

  const std::string& name() const { return name_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mass() const { return mass_; }

  double density(double xi) const {
    return (xi < lo_ || xi > hi_) ? 0.0 : pdf_(xi);
  }

 private:
  std::string name_;
  double lo_, hi_;
  std::function<double(double)> pdf_;
  double mass_;
};

// Standard normal truncated to [-8, 8].
ShapeSampler shape_gauss();
// Indicator of [0, 1].
ShapeSampler shape_uniform();
// 1 - |xi| on [-1, 1].
ShapeSampler shape_triangle();
// Piecewise-linear density through (x, value) samples, renormalized.
ShapeSampler shape_from_table(std::vector<std::pair<double, double>> xy);
// "gauss" | "uniform" | "triangle" | "table:<csv path>"
ShapeSampler shape_by_name(const std::string& name);

}  // namespace specwass
