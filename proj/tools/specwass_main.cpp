// specwass: Wasserstein-1 distances on finite metric spaces by primal/dual
// linear programming, cross-checked against the closed-form spectral-distance
// formulas (1-D cumulative integral, wave packets, two-sheet and Bloch-ball
// examples).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "specwass/closedform.hpp"
#include "specwass/errors.hpp"
#include "specwass/io.hpp"
#include "specwass/ncgeom.hpp"
#include "specwass/random_gen.hpp"
#include "specwass/rng.hpp"
#include "specwass/solver.hpp"
#include "specwass/two_sheet.hpp"

using nlohmann::json;
using namespace specwass;

namespace {

// Verification failure: exit code 1, distinct from usage errors (2).
struct VerifyFailure : Error {
  using Error::Error;
};

double default_tolerance() {
  if (const char* env = std::getenv("SPECWASS_TOL")) {
    try {
      return std::stod(env);
    } catch (...) {
      throw ParamError("SPECWASS_TOL is not a number");
    }
  }
  return 1e-9;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ReportOptions {
  bool csv = false;
  bool timing = false;
};

// RunReport emission. CSV rows share one stable header; JSON mirrors the
// fields. Wall time is reported only on request so identical invocations
// stay byte-identical.
void emit_report(const std::string& method, double value, const json& certificate,
                 double wall_ms, const ReportOptions& opt) {
  if (opt.csv) {
    std::string gap, lower, upper;
    if (!certificate.is_null()) {
      if (certificate.contains("duality_gap"))
        gap = fmt(certificate["duality_gap"].get<double>());
      if (certificate.contains("lower")) lower = fmt(certificate["lower"].get<double>());
      if (certificate.contains("upper")) upper = fmt(certificate["upper"].get<double>());
    }
    std::cout << "method,value,gap,lower,upper";
    if (opt.timing) std::cout << ",wall_time_ms";
    std::cout << "\n" << method << "," << fmt(value) << "," << gap << "," << lower << ","
              << upper;
    if (opt.timing) std::cout << "," << fmt(wall_ms);
    std::cout << "\n";
    return;
  }
  json rep;
  rep["method"] = method;
  rep["value"] = value;
  if (!certificate.is_null()) rep["certificate"] = certificate;
  if (opt.timing) rep["wall_time_ms"] = wall_ms;
  std::cout << rep.dump(2) << "\n";
}

// ---------------------------------------------------------------- space ---

int run_gen_line(std::size_t n, double a, double b, const std::string& out) {
  const auto space = build_grid_line(n, a, b);
  save_space(space, out);
  std::cout << "wrote " << out << ": line grid, " << n << " points on [" << fmt(a) << ", "
            << fmt(b) << "], spacing " << fmt(space.dist(0, 1)) << "\n";
  return 0;
}

int run_gen_circle(std::size_t n, const std::string& out) {
  const auto space = build_grid_circle(n);
  save_space(space, out);
  std::cout << "wrote " << out << ": circle grid, " << n
            << " points, unit circumference, step " << fmt(space.dist(0, 1)) << "\n";
  return 0;
}

int run_gen_twosheet(const std::string& base_path, double norm_di, std::size_t fiber,
                     const std::string& higgs_path, const std::string& out) {
  const auto base = load_space(base_path);
  std::vector<double> profile;
  const std::vector<double>* profile_ptr = nullptr;
  if (!higgs_path.empty()) {
    profile = load_profile_csv(higgs_path, base);
    profile_ptr = &profile;
  }
  const auto grid = build_two_sheet(base, norm_di, fiber, profile_ptr);
  const auto product = grid.metric_space();
  save_space(product, out);
  std::cout << "wrote " << out << ": " << base.size() << " x " << fiber << " product grid ("
            << product.size() << " points)\n";
  std::cout << "internal jump distance d((x0,0),(x0,1)) = "
            << fmt(grid.geodesic(grid.node(0, 0), grid.node(0, fiber - 1))) << "\n";
  return 0;
}

int run_validate(const std::string& path) {
  try {
    const auto space = load_space(path);
    std::cout << path << ": valid metric on " << space.size() << " points\n";
    return 0;
  } catch (const MetricFileError& e) {
    std::cout << path << ": INVALID\n";
    for (const auto& v : e.report) std::cout << "  " << v.describe() << "\n";
    return 1;
  }
}

// ----------------------------------------------------------------- dist ---

struct DistArgs {
  std::string method;
  std::string space_path, mu_path, nu_path;
  std::size_t x_index = 0;
  std::string shape = "gauss";
  double sigma = 0.0, sigma_p = 0.0;
  std::vector<double> x, y;
  std::size_t quad_n = 512;
  std::vector<double> bloch_a, bloch_b;
  std::string bloch_a_json, bloch_b_json;
  double theta_param = 2.0;
  double theta1 = 0.0, theta2 = 0.0, radius = 1.0, dD = 1.0;
  double norm_di = 1.0;
  std::string shift = "none";
  double tol = 1e-9;
  ReportOptions report;
};

int run_dist(const DistArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  const auto need_instance = [&] {
    if (a.space_path.empty() || a.mu_path.empty() || a.nu_path.empty())
      throw ParamError(a.method + " needs --space, --mu and --nu");
  };

  if (a.method == "primal" || a.method == "dual" || a.method == "both" ||
      a.method == "closed1d" || a.method == "bounds" || a.method == "jump") {
    need_instance();
    const auto space = load_space(a.space_path);
    const auto mu = load_distribution(a.mu_path, space);
    const auto nu = load_distribution(a.nu_path, space);

    if (a.method == "primal") {
      const auto cost = CostMatrix::from_metric_space(space);
      emit_report("primal", solve_primal(cost, mu, nu).value, nullptr, elapsed_ms(), a.report);
    } else if (a.method == "dual") {
      const auto cost = CostMatrix::from_metric_space(space);
      emit_report("dual", solve_dual(cost, mu, nu).value, nullptr, elapsed_ms(), a.report);
    } else if (a.method == "both") {
      const auto cost = CostMatrix::from_metric_space(space);
      const auto r = solve_both(cost, mu, nu);
      const double gap = duality_gap(r, a.tol);
      json cert;
      cert["dual_value"] = r.potential.value;
      cert["duality_gap"] = gap;
      emit_report("both", r.plan.value, cert, elapsed_ms(), a.report);
    } else if (a.method == "closed1d") {
      if (!space.has_coords() || space.coord_dim() != 1)
        throw ParamError(
            "closed1d applies to line grids only: the space carries no 1-D coordinates "
            "(the cumulative-integral formula is one-dimensional)");
      emit_report("closed1d", wasserstein_1d(space, mu, nu), nullptr, elapsed_ms(), a.report);
    } else if (a.method == "bounds") {
      const auto cost = CostMatrix::from_metric_space(space);
      const double lower = barycenter_lower_bound(space, mu, nu);
      const double upper = product_upper_bound(space, mu, nu);
      const double w = solve_primal(cost, mu, nu).value;
      json cert;
      cert["lower"] = lower;
      cert["upper"] = upper;
      emit_report("bounds", w, cert, elapsed_ms(), a.report);
    } else {  // jump
      JumpCostParams params;
      params.norm_di = a.norm_di;
      if (a.shift == "none")
        params.shift = JumpCostParams::Shift::None;
      else if (a.shift == "linear")
        params.shift = JumpCostParams::Shift::Linear;
      else if (a.shift == "quadratic")
        params.shift = JumpCostParams::Shift::Quadratic;
      else
        throw ParamError("--shift must be none|linear|quadratic");
      const auto cost = jump_cost(space, params);
      const auto r = solve_jump(cost, mu, nu);
      json cert;
      cert["dual_value"] = r.potential.value;
      cert["diagonal_gap"] = r.gap;
      emit_report("jump", r.plan.value, cert, elapsed_ms(), a.report);
    }
    return 0;
  }

  if (a.method == "expect") {
    if (a.space_path.empty() || a.mu_path.empty())
      throw ParamError("expect needs --space and --mu (and --x-index)");
    const auto space = load_space(a.space_path);
    const auto mu = load_distribution(a.mu_path, space);
    emit_report("expect", distance_to_pure(space, a.x_index, mu), nullptr, elapsed_ms(),
                a.report);
    return 0;
  }

  if (a.method == "wavepacket") {
    if (a.x.empty() || a.y.empty()) throw ParamError("wavepacket needs --x and --y");
    const auto shape = shape_by_name(a.shape);
    const double v = wavepacket_distance(shape, a.sigma, a.sigma_p, a.x, a.y, a.quad_n);
    json cert(nullptr);
    if (!(a.x == a.y && a.sigma == a.sigma_p)) {
      const auto h = optimal_potential(a.x, a.y, a.sigma, a.sigma_p);
      if (h.kind == PotentialDescriptor::Kind::Affine) {
        cert = json{{"potential", {{"kind", "affine"}, {"direction", h.direction}}}};
      } else {
        cert = json{{"potential", {{"kind", "cone"}, {"apex", h.apex}}}};
        cert["potential_gain"] = potential_gain(h, shape, a.sigma, a.sigma_p, a.x, a.y, a.quad_n);
      }
    }
    emit_report("wavepacket", v, cert, elapsed_ms(), a.report);
    return 0;
  }

  if (a.method == "moyal") {
    const auto load_triple = [](const std::string& path) {
      std::ifstream in(path);
      if (!in) throw IoError("cannot open '" + path + "'");
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw IoError("'" + path + "': " + e.what());
      }
      auto v = j.get<std::vector<double>>();
      if (v.size() != 3) throw IoError("'" + path + "': expected a JSON triple [x, y, z]");
      return v;
    };
    const std::vector<double> va =
        a.bloch_a_json.empty() ? a.bloch_a : load_triple(a.bloch_a_json);
    const std::vector<double> vb =
        a.bloch_b_json.empty() ? a.bloch_b : load_triple(a.bloch_b_json);
    if (va.size() != 3 || vb.size() != 3)
      throw ParamError("moyal needs --a x y z / --b x y z or --a-json / --b-json files");
    const BlochState sa{va[0], va[1], va[2]};
    const BlochState sb{vb[0], vb[1], vb[2]};
    emit_report("moyal", moyal_ball_distance(sa, sb, a.theta_param), nullptr, elapsed_ms(),
                a.report);
    return 0;
  }

  if (a.method == "equator") {
    emit_report("equator", equatorial_distance(a.theta1, a.theta2, a.radius, a.dD), nullptr,
                elapsed_ms(), a.report);
    return 0;
  }

  throw ParamError("unknown method '" + a.method + "'");
}

// --------------------------------------------------------------- verify ---

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  double tol = 1e-9;
  std::size_t refine = 4;
};

json instance_json(const FiniteMetricSpace& space, const Distribution& mu1,
                   const Distribution& mu2) {
  json j;
  json rows = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < space.size(); ++k) row.push_back(space.dist(i, k));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["mu"] = mu1.weights();
  j["nu"] = mu2.weights();
  return j;
}

[[noreturn]] void fail_case(const std::string& suite, std::size_t case_id, const std::string& why,
                            const json& instance) {
  std::cout << "FAIL " << suite << " case " << case_id << ": " << why << "\n";
  if (!instance.is_null()) std::cout << instance.dump(2) << "\n";
  throw VerifyFailure(suite + " suite failed");
}

struct SuiteStats {
  std::size_t passed = 0;
  std::size_t total = 0;
};

SuiteStats verify_duality(const VerifyArgs& va) {
  SplitMix64 rng(va.seed);
  SuiteStats st;
  for (std::size_t t = 0; t < va.cases; ++t) {
    const std::size_t n = 2 + rng.below(19);
    const auto space = random_metric_space(rng, n);
    const auto cost = CostMatrix::from_metric_space(space);
    const auto mu1 = random_distribution(rng, n, 1 + rng.below(n));
    const auto mu2 = random_distribution(rng, n, 1 + rng.below(n));
    const auto r = solve_both(cost, mu1, mu2);
    const double rel = std::abs(r.gap) / std::max(1.0, r.plan.value);
    ++st.total;
    if (rel > va.tol)
      fail_case("duality", t, "relative gap " + fmt(rel), instance_json(space, mu1, mu2));
    ++st.passed;
    std::cout << "duality case " << t << ": n=" << n << " value=" << fmt(r.plan.value)
              << " gap=" << fmt(r.gap) << " ok\n";
  }
  return st;
}

SuiteStats verify_oracle(const VerifyArgs& va) {
  SplitMix64 rng(va.seed);
  SuiteStats st;
  for (std::size_t t = 0; t < va.cases; ++t) {
    const std::size_t n = 4 + rng.below(5);
    const auto metric = random_integer_metric(rng, n);
    const auto w1 = random_rational_weights(rng, n, 1 + rng.below(4));
    const auto w2 = random_rational_weights(rng, n, 1 + rng.below(4));
    const Rational lp = solve_primal_exact(metric.exact, w1.exact, w2.exact);
    const Rational oracle = oracle_enumerate_exact(metric.exact, w1.exact, w2.exact);
    ++st.total;
    if (lp != oracle) {
      json inst;
      inst["n"] = n;
      fail_case("oracle", t, "rational simplex " + lp.str() + " != oracle " + oracle.str(),
                inst);
    }
    ++st.passed;
    std::cout << "oracle case " << t << ": n=" << n << " value=" << lp.str() << " ok\n";
  }
  return st;
}

SuiteStats verify_sandwich(const VerifyArgs& va) {
  SplitMix64 rng(va.seed);
  SuiteStats st;
  for (std::size_t t = 0; t < va.cases; ++t) {
    const std::size_t n = 2 + rng.below(24);
    const auto line = build_grid_line(n, rng.uniform(-3, 0), rng.uniform(0.5, 4));
    const auto cost = CostMatrix::from_metric_space(line);
    const auto mu1 = random_distribution(rng, n, 1 + rng.below(n));
    const auto mu2 = random_distribution(rng, n, 1 + rng.below(n));
    const double lower = barycenter_lower_bound(line, mu1, mu2);
    const double upper = product_upper_bound(line, mu1, mu2);
    const double w = solve_primal(cost, mu1, mu2).value;
    ++st.total;
    if (lower > w + va.tol || w > upper + va.tol)
      fail_case("sandwich", t, "violated " + fmt(lower) + " <= " + fmt(w) + " <= " + fmt(upper),
                instance_json(line, mu1, mu2));
    ++st.passed;
    std::cout << "sandwich case " << t << ": " << fmt(lower) << " <= " << fmt(w)
              << " <= " << fmt(upper) << " ok\n";
  }
  return st;
}

SuiteStats verify_interp(const VerifyArgs& va) {
  SplitMix64 rng(va.seed);
  SuiteStats st;
  for (std::size_t t = 0; t < va.cases; ++t) {
    const std::size_t n = 2 + rng.below(14);
    const auto space = random_metric_space(rng, n);
    const auto cost = CostMatrix::from_metric_space(space);
    const auto mu0 = random_distribution(rng, n, 1 + rng.below(n));
    const auto mu1 = random_distribution(rng, n, 1 + rng.below(n));
    const double s = rng.uniform01();
    const double u = rng.uniform01();
    const double w01 = solve_primal(cost, mu0, mu1).value;
    const double wsu =
        solve_primal(cost, interpolate(mu0, mu1, s), interpolate(mu0, mu1, u)).value;
    const double err = std::abs(wsu - std::abs(s - u) * w01);
    ++st.total;
    if (err > va.tol)
      fail_case("interp", t, "linearity defect " + fmt(err), instance_json(space, mu0, mu1));
    ++st.passed;
    std::cout << "interp case " << t << ": |s-t|=" << fmt(std::abs(s - u))
              << " defect=" << fmt(err) << " ok\n";
  }
  return st;
}

SuiteStats verify_twosheet(const VerifyArgs& va) {
  SplitMix64 rng(va.seed);
  SuiteStats st;

  // exact internal jump
  {
    const auto base = build_grid_line(9, 0.0, 1.0);
    const auto grid = build_two_sheet(base, 2.0, 9);
    for (std::size_t i = 0; i < 9; ++i) {
      ++st.total;
      const double d = grid.geodesic(grid.node(i, 0), grid.node(i, 8));
      if (d != 0.5) fail_case("twosheet", i, "jump distance " + fmt(d) + " != 0.5", nullptr);
      ++st.passed;
    }
    std::cout << "twosheet: internal jump d((x,0),(x,1)) = 1/||D_I|| exact on 9 columns ok\n";
  }

  // same-sheet reduction
  for (std::size_t t = 0; t < 10; ++t) {
    const std::size_t n = 3 + rng.below(8);
    const auto base = random_metric_space(rng, n);
    const auto grid = build_two_sheet(base, 0.5 + rng.uniform01(), 3 + rng.below(4));
    const auto a = random_distribution(rng, n, 1 + rng.below(n));
    const auto b = random_distribution(rng, n, 1 + rng.below(n));
    const std::vector<double> zero(n, 0.0);
    const bool sheet0 = rng.below(2) == 0;
    const TwoSheetState s1(sheet0 ? a.weights() : zero, sheet0 ? zero : a.weights());
    const TwoSheetState s2(sheet0 ? b.weights() : zero, sheet0 ? zero : b.weights());
    const double on_grid = two_sheet_state_distance(grid, s1, s2);
    const double on_base = solve_primal(CostMatrix::from_metric_space(base), a, b).value;
    ++st.total;
    if (std::abs(on_grid - on_base) > 1e-12)
      fail_case("twosheet", t, "same-sheet reduction off by " + fmt(on_grid - on_base),
                instance_json(base, a, b));
    ++st.passed;
    std::cout << "twosheet same-sheet case " << t << ": " << fmt(on_grid) << " ok\n";
  }

  // jump-work residuals
  for (std::size_t t = 0; t < 10; ++t) {
    const std::size_t n = 3 + rng.below(10);
    const auto base = random_metric_space(rng, n, 2.0);
    const auto rep = jump_work_identity(base, 0.2 + 2.0 * rng.uniform01(), rng.below(n), rng.below(n));
    ++st.total;
    if (rep.residual > 1e-12)
      fail_case("twosheet", t, "jump-work residual " + fmt(rep.residual), nullptr);
    ++st.passed;
  }
  std::cout << "twosheet: jump-work residual <= 1e-12 on 10 random pairs ok\n";

  // convergence study against d'^2 = d^2 + 1/||D_I||^2 under base refinement
  {
    std::cout << "twosheet refinement (fiber 65, probe x=0 -> y=63/64, ||D_I||=1):\n";
    std::cout << "  base_n    grid_value      analytic        rel_error\n";
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < va.refine; ++k) {
      const std::size_t n = 64 * (std::size_t{1} << k) + 1;
      const auto base = build_grid_line(n, 0.0, 1.0);
      const std::size_t y = (n - 1) - (n - 1) / 64;  // coordinate 63/64 at every level
      const auto grid = build_two_sheet(base, 1.0, 65);
      const double g = grid.geodesic(grid.node(0, 0), grid.node(y, 64));
      const double exact = two_sheet_pure_distance(base.dist(0, y), 1.0);
      const double rel = std::abs(g - exact) / exact;
      std::printf("  %6zu    %.10f    %.10f    %.3e\n", n, g, exact, rel);
      ++st.total;
      if (rel >= prev)
        fail_case("twosheet", k, "refinement error did not decrease: " + fmt(rel), nullptr);
      if (rel > 0.02)
        fail_case("twosheet", k, "refinement error " + fmt(rel) + " > 2%", nullptr);
      ++st.passed;
      prev = rel;
    }
  }
  return st;
}

SuiteStats verify_moyal(const VerifyArgs& va) {
  SplitMix64 rng(va.seed);
  SuiteStats st;

  // branch continuity across alpha = pi/4
  for (std::size_t t = 0; t < 1000; ++t) {
    const double r = 0.05 + 0.5 * rng.uniform01();
    const double dz = r / std::sqrt(2.0);
    const BlochState a{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)};
    const BlochState b{a.x + dz, a.y, a.z + dz};  // exactly on the threshold
    const double dec = std::sqrt(2.0) * dz;
    const double expect = dec / std::sqrt(2.0);  // theta = 2 makes the prefactor 1
    const double got = moyal_ball_distance(a, b, 2.0);
    ++st.total;
    if (std::abs(got - expect) > 1e-12)
      fail_case("moyal", t, "threshold mismatch " + fmt(got - expect), nullptr);
    ++st.passed;
  }
  std::cout << "moyal: branch continuity at pi/4 on 1000 segments ok\n";

  // triangle inequality
  const std::size_t triples = std::max<std::size_t>(va.cases, 10000);
  for (std::size_t t = 0; t < triples; ++t) {
    BlochState p[3];
    for (auto& s : p) {
      do {
        s = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      } while (s.x * s.x + s.y * s.y + s.z * s.z > 1.0);
    }
    const double ab = moyal_ball_distance(p[0], p[1], 2.0);
    const double bc = moyal_ball_distance(p[1], p[2], 2.0);
    const double ac = moyal_ball_distance(p[0], p[2], 2.0);
    ++st.total;
    if (ac > ab + bc + 1e-12)
      fail_case("moyal", t, "triangle violated by " + fmt(ac - ab - bc), nullptr);
    ++st.passed;
  }
  std::cout << "moyal: triangle inequality on " << triples << " random triples ok\n";

  // rotation invariance of the equatorial distance
  for (std::size_t t = 0; t < 1000; ++t) {
    const double t1 = rng.uniform(0, 6.3), t2 = rng.uniform(0, 6.3), c = rng.uniform(-9, 9);
    const double r = rng.uniform01(), dd = 0.1 + rng.uniform01();
    ++st.total;
    if (std::abs(equatorial_distance(t1 + c, t2 + c, r, dd) -
                 equatorial_distance(t1, t2, r, dd)) > 1e-12)
      fail_case("moyal", t, "rotation invariance broken", nullptr);
    ++st.passed;
  }
  std::cout << "moyal: rotation invariance on 1000 cases ok\n";
  return st;
}

SuiteStats verify_midpoint(const VerifyArgs&) {
  SuiteStats st;
  for (const double dtheta : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    const double defect = midpoint_defect(0.0, dtheta, 10000);
    ++st.total;
    if (!(defect > 0.0)) {
      json inst;
      inst["dtheta"] = dtheta;
      fail_case("midpoint", 0, "defect not positive: " + fmt(defect), inst);
    }
    ++st.passed;
    std::cout << "midpoint dtheta=" << fmt(dtheta) << ": defect=" << fmt(defect) << " > 0 ok\n";
  }
  return st;
}

int run_verify(const VerifyArgs& va) {
  SuiteStats st;
  const auto add = [&st](const SuiteStats& s) {
    st.passed += s.passed;
    st.total += s.total;
  };
  if (va.suite == "duality")
    add(verify_duality(va));
  else if (va.suite == "oracle")
    add(verify_oracle(va));
  else if (va.suite == "sandwich")
    add(verify_sandwich(va));
  else if (va.suite == "interp")
    add(verify_interp(va));
  else if (va.suite == "twosheet")
    add(verify_twosheet(va));
  else if (va.suite == "moyal")
    add(verify_moyal(va));
  else if (va.suite == "midpoint")
    add(verify_midpoint(va));
  else if (va.suite == "all") {
    add(verify_duality(va));
    add(verify_oracle(va));
    add(verify_sandwich(va));
    add(verify_interp(va));
    add(verify_twosheet(va));
    add(verify_moyal(va));
    add(verify_midpoint(va));
  } else {
    throw ParamError("unknown suite '" + va.suite +
                     "' (duality|oracle|sandwich|interp|twosheet|moyal|midpoint|all)");
  }
  std::cout << va.suite << ": " << st.passed << "/" << st.total << " checks passed\n";
  return 0;
}

}  // namespace

int run_app(int argc, char** argv) {
  CLI::App app{
      "specwass: Wasserstein-1 distances on finite metric spaces, with closed-form "
      "spectral-distance cross-checks"};
  app.require_subcommand(1);

  std::function<int()> action;

  // space ------------------------------------------------------------------
  auto* space = app.add_subcommand("space", "generate and validate space files");
  space->require_subcommand(1);

  {
    auto* c = space->add_subcommand("gen-line", "equispaced grid on [a, b]");
    auto n = std::make_shared<std::size_t>(2);
    auto a = std::make_shared<double>(0.0);
    auto b = std::make_shared<double>(1.0);
    auto out = std::make_shared<std::string>();
    c->add_option("--n", *n, "number of points")->required();
    c->add_option("--a", *a, "left endpoint");
    c->add_option("--b", *b, "right endpoint");
    c->add_option("-o,--out", *out, "output space file")->required();
    c->callback([&action, n, a, b, out] {
      action = [=] { return run_gen_line(*n, *a, *b, *out); };
    });
  }
  {
    auto* c =
        space->add_subcommand("gen-circle", "equispaced grid on the unit-circumference circle");
    auto n = std::make_shared<std::size_t>(3);
    auto out = std::make_shared<std::string>();
    c->add_option("--n", *n, "number of points")->required();
    c->add_option("-o,--out", *out, "output space file")->required();
    c->callback([&action, n, out] {
      action = [=] { return run_gen_circle(*n, *out); };
    });
  }
  {
    auto* c = space->add_subcommand("gen-twosheet", "product grid base x fiber");
    auto base = std::make_shared<std::string>();
    auto norm_di = std::make_shared<double>(1.0);
    auto fiber = std::make_shared<std::size_t>(2);
    auto higgs = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    c->add_option("--base", *base, "base space file")->required();
    c->add_option("--norm-di", *norm_di, "||D_I|| (inverse fiber length)")->required();
    c->add_option("--fiber", *fiber, "fiber grid points")->required();
    c->add_option("--higgs", *higgs, "per-point profile CSV (id,value)");
    c->add_option("-o,--out", *out, "output space file")->required();
    c->callback([&action, base, norm_di, fiber, higgs, out] {
      action = [=] { return run_gen_twosheet(*base, *norm_di, *fiber, *higgs, *out); };
    });
  }
  {
    auto* c = space->add_subcommand("validate", "run the metric-axiom report on a space file");
    auto path = std::make_shared<std::string>();
    c->add_option("file", *path, "space file")->required();
    c->callback([&action, path] {
      action = [=] { return run_validate(*path); };
    });
  }

  // dist -------------------------------------------------------------------
  auto* dist = app.add_subcommand("dist", "compute a distance by the chosen method");
  {
    auto args = std::make_shared<DistArgs>();
    args->tol = default_tolerance();
    dist->add_option("method", args->method,
                     "primal|dual|both|closed1d|expect|bounds|wavepacket|moyal|equator|jump")
        ->required();
    dist->add_option("--space", args->space_path, "space file");
    dist->add_option("--mu", args->mu_path, "first distribution file");
    dist->add_option("--nu", args->nu_path, "second distribution file");
    dist->add_option("--x-index", args->x_index, "pure-state index (expect)");
    dist->add_option("--shape", args->shape, "gauss|uniform|triangle|table:<path>");
    dist->add_option("--sigma", args->sigma, "first packet width");
    dist->add_option("--sigma-p", args->sigma_p, "second packet width");
    dist->add_option("--x", args->x, "first center (vector)");
    dist->add_option("--y", args->y, "second center (vector)");
    dist->add_option("--quad-n", args->quad_n, "quadrature nodes (>= 64)");
    dist->add_option("--a", args->bloch_a, "Bloch state a (x y z)")->expected(3);
    dist->add_option("--b", args->bloch_b, "Bloch state b (x y z)")->expected(3);
    dist->add_option("--a-json", args->bloch_a_json, "Bloch state a as a JSON triple file");
    dist->add_option("--b-json", args->bloch_b_json, "Bloch state b as a JSON triple file");
    dist->add_option("--theta", args->theta_param, "Moyal deformation parameter");
    dist->add_option("--theta1", args->theta1, "first azimuth (radians)");
    dist->add_option("--theta2", args->theta2, "second azimuth (radians)");
    dist->add_option("--r", args->radius, "equatorial circle radius in [0,1]");
    dist->add_option("--dd", args->dD, "|D1 - D2| eigenvalue gap");
    dist->add_option("--norm-di", args->norm_di, "||D_I|| for the jump cost");
    dist->add_option("--shift", args->shift, "jump-cost shift: none|linear|quadratic");
    dist->add_option("--tol", args->tol, "duality-gap tolerance");
    dist->add_flag("--csv", args->report.csv, "CSV output");
    dist->add_flag("--timing", args->report.timing, "include wall_time_ms");
    dist->callback([&action, args] {
      action = [args] { return run_dist(*args); };
    });
  }

  // verify -----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a seeded property suite");
  {
    auto args = std::make_shared<VerifyArgs>();
    args->tol = default_tolerance();
    verify->add_option("suite", args->suite,
                       "duality|oracle|sandwich|interp|twosheet|moyal|midpoint|all")
        ->required();
    verify->add_option("--seed", args->seed, "splitmix64 seed");
    verify->add_option("--cases", args->cases, "number of cases");
    verify->add_option("--tol", args->tol, "tolerance");
    verify->add_option("--refine", args->refine, "refinement levels (twosheet)");
    verify->callback([&action, args] {
      action = [args] { return run_verify(*args); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return action ? action() : 0;
}

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const VerifyFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParamError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
