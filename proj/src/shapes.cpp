#include "specwass/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "specwass/errors.hpp"

namespace specwass {

ShapeSampler::ShapeSampler(std::string name, double lo, double hi,
                           std::function<double(double)> pdf, double mass)
    : name_(std::move(name)), lo_(lo), hi_(hi), pdf_(std::move(pdf)), mass_(mass) {
  if (!(lo_ < hi_)) throw ParamError("ShapeSampler: empty support interval");
}

ShapeSampler shape_gauss() {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  const double mass = std::erf(8.0 / std::sqrt(2.0));  // truncation loses ~1e-15
  return ShapeSampler("gauss", -8.0, 8.0,
                      [](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }, mass);
}

ShapeSampler shape_uniform() {
  return ShapeSampler("uniform", 0.0, 1.0, [](double) { return 1.0; }, 1.0);
}

ShapeSampler shape_triangle() {
  return ShapeSampler("triangle", -1.0, 1.0,
                      [](double x) { return 1.0 - std::abs(x); }, 1.0);
}

ShapeSampler shape_from_table(std::vector<std::pair<double, double>> xy) {
  if (xy.size() < 2) throw ParamError("table shape: need at least two samples");
  std::sort(xy.begin(), xy.end());
  for (std::size_t i = 0; i + 1 < xy.size(); ++i)
    if (xy[i].first == xy[i + 1].first)
      throw ParamError("table shape: duplicate abscissa " + std::to_string(xy[i].first));
  for (const auto& [x, v] : xy)
    if (v < 0.0) throw ParamError("table shape: negative density sample");

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xy.size(); ++i)
    area += 0.5 * (xy[i].second + xy[i + 1].second) * (xy[i + 1].first - xy[i].first);
  if (area <= 0.0) throw NormalizationError("table shape: zero total mass");
  for (auto& [x, v] : xy) v /= area;

  const double lo = xy.front().first;
  const double hi = xy.back().first;
  auto pdf = [table = std::move(xy)](double x) {
    auto it = std::upper_bound(table.begin(), table.end(), std::make_pair(x, 1e300));
    if (it == table.begin()) return table.front().second;
    if (it == table.end()) return table.back().second;
    const auto& [x1, v1] = *(it - 1);
    const auto& [x2, v2] = *it;
    const double t = (x - x1) / (x2 - x1);
    return v1 + t * (v2 - v1);
  };
  return ShapeSampler("table", lo, hi, std::move(pdf), 1.0);
}

ShapeSampler shape_by_name(const std::string& name) {
  if (name == "gauss") return shape_gauss();
  if (name == "uniform") return shape_uniform();
  if (name == "triangle") return shape_triangle();
  if (name.rfind("table:", 0) == 0) {
    const std::string path = name.substr(6);
    std::ifstream in(path);
    if (!in) throw IoError("table shape: cannot open '" + path + "'");
    std::vector<std::pair<double, double>> xy;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream row(line);
      double x, v;
      if (!(row >> x >> v)) throw IoError("table shape: bad row '" + line + "'");
      xy.emplace_back(x, v);
    }
    return shape_from_table(std::move(xy));
  }
  throw ParamError("unknown shape '" + name + "' (gauss|uniform|triangle|table:<path>)");
}

}  // namespace specwass
