#include "specwass/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace specwass {

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("'" + path + "': " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

FiniteMetricSpace load_space(const std::string& path) {
  const json j = read_json(path);
  if (!j.contains("points") || !j["points"].is_array())
    throw IoError("'" + path + "': missing points array");

  std::vector<Point> pts;
  for (const auto& p : j["points"]) {
    Point pt;
    if (!p.contains("id") || !p["id"].is_string())
      throw IoError("'" + path + "': every point needs a string id");
    pt.id = p["id"].get<std::string>();
    if (p.contains("coords")) pt.coords = p["coords"].get<std::vector<double>>();
    pts.push_back(std::move(pt));
  }
  const std::size_t n = pts.size();
  if (n == 0) throw IoError("'" + path + "': empty point list");

  const std::string metric = j.value("metric", std::string("explicit"));
  Matrix d(n, n, 0.0);
  if (metric == "explicit") {
    if (!j.contains("matrix")) throw IoError("'" + path + "': explicit metric needs a matrix");
    const auto rows = j["matrix"].get<std::vector<std::vector<double>>>();
    if (rows.size() != n) throw IoError("'" + path + "': matrix must be n x n");
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw IoError("'" + path + "': matrix must be n x n");
      for (std::size_t k = 0; k < n; ++k) d(i, k) = rows[i][k];
    }
    const auto report = validate_metric(d);
    if (!report.empty())
      throw MetricFileError("'" + path + "': matrix violates the metric axioms", report);
  } else if (metric == "euclidean") {
    for (const auto& pt : pts)
      if (pt.coords.empty())
        throw IoError("'" + path + "': euclidean metric needs coords on every point");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        if (pts[i].coords.size() != pts[k].coords.size())
          throw IoError("'" + path + "': coords must share a dimension");
        double s = 0.0;
        for (std::size_t c = 0; c < pts[i].coords.size(); ++c) {
          const double t = pts[i].coords[c] - pts[k].coords[c];
          s += t * t;
        }
        d(i, k) = d(k, i) = std::sqrt(s);
      }
  } else {
    throw IoError("'" + path + "': metric must be 'explicit' or 'euclidean'");
  }
  return FiniteMetricSpace(std::move(pts), std::move(d));
}

void save_space(const FiniteMetricSpace& space, const std::string& path) {
  json j;
  j["points"] = json::array();
  for (const auto& p : space.points()) {
    json jp;
    jp["id"] = p.id;
    if (!p.coords.empty()) jp["coords"] = p.coords;
    j["points"].push_back(jp);
  }
  j["metric"] = "explicit";
  const std::size_t n = space.size();
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < n; ++k) row.push_back(space.dist(i, k));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  write_text(path, j.dump(2) + "\n");
}

Distribution load_distribution(const std::string& path, const FiniteMetricSpace& space) {
  const json j = read_json(path);
  if (!j.contains("weights")) throw IoError("'" + path + "': missing weights");
  auto w = j["weights"].get<std::vector<double>>();
  if (w.size() != space.size())
    throw ShapeError("'" + path + "': " + std::to_string(w.size()) + " weights for a " +
                     std::to_string(space.size()) + "-point space");
  return Distribution(std::move(w), j.value("space", std::string{}));
}

void save_distribution(const Distribution& d, const std::string& path) {
  json j;
  j["space"] = d.space_ref();
  j["weights"] = d.weights();
  write_text(path, j.dump(2) + "\n");
}

std::vector<std::pair<double, double>> load_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::pair<double, double>> xy;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, v;
    if (!(row >> x >> v)) throw IoError("'" + path + "': bad row '" + line + "'");
    xy.emplace_back(x, v);
  }
  return xy;
}

std::vector<double> load_profile_csv(const std::string& path, const FiniteMetricSpace& base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < base.size(); ++i) index[base.point(i).id] = i;

  std::vector<double> profile(base.size(), 0.0);
  std::vector<char> seen(base.size(), 0);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("'" + path + "': bad row '" + line + "'");
    const std::string id = line.substr(0, comma);
    const auto it = index.find(id);
    if (it == index.end()) throw IoError("'" + path + "': unknown point id '" + id + "'");
    profile[it->second] = std::stod(line.substr(comma + 1));
    seen[it->second] = 1;
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    if (!seen[i])
      throw IoError("'" + path + "': no profile value for point '" + base.point(i).id + "'");
  return profile;
}

}  // namespace specwass
