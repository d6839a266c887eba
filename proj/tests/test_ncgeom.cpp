#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specwass/errors.hpp"
#include "specwass/ncgeom.hpp"
#include "specwass/random_gen.hpp"
#include "specwass/solver.hpp"
#include "specwass/space.hpp"
#include "specwass/two_sheet.hpp"

using namespace specwass;

namespace {
constexpr double kPi = 3.14159265358979323846;

BlochState random_ball_point(SplitMix64& rng) {
  // rejection sampling inside the closed unit ball
  while (true) {
    const BlochState s{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (s.x * s.x + s.y * s.y + s.z * s.z <= 1.0) return s;
  }
}
}  // namespace

TEST_CASE("equatorial distance") {
  CHECK(equatorial_distance(1.3, 1.3, 0.8, 1.0) == 0.0);
  CHECK(equatorial_distance(kPi, 0.0, 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(equatorial_distance(0, 1, 0.5, 0.0), ParamError);
  CHECK_THROWS_AS(equatorial_distance(0, 1, 1.5, 1.0), ParamError);

  SplitMix64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const double t1 = rng.uniform(0, 2 * kPi);
    const double t2 = rng.uniform(0, 2 * kPi);
    const double c = rng.uniform(-10, 10);
    const double r = rng.uniform01();
    const double dd = 0.1 + rng.uniform01();
    // rotation invariance and symmetry
    CHECK(equatorial_distance(t1 + c, t2 + c, r, dd) ==
          doctest::Approx(equatorial_distance(t1, t2, r, dd)).epsilon(1e-12));
    CHECK(equatorial_distance(t1, t2, r, dd) == equatorial_distance(t2, t1, r, dd));
    // vanishes on 2 pi shifts (up to the float truncation of pi itself)
    CHECK(equatorial_distance(t1, t1 + 2 * kPi, r, dd) <= 1e-14);
  }
}

TEST_CASE("midpoint defect is strictly positive on the chord-metric circle") {
  const double defect = midpoint_defect(0.0, kPi / 2.0, 10000);
  CHECK(defect > 0.01);  // grid-search oracle value ~0.058
  CHECK(defect < 0.1);

  // continuity: small separations have small defect
  CHECK(midpoint_defect(0.0, 0.05, 10000) < midpoint_defect(0.0, 1.0, 10000));

  CHECK_THROWS_AS(midpoint_defect(1.0, 1.0, 10000), DegenerateError);
  CHECK_THROWS_AS(midpoint_defect(0.0, 1.0, 10), ParamError);
}

TEST_CASE("midpoint defect control: the line is a geodesic space") {
  // |a-b| on a grid that contains the exact midpoint: defect vanishes
  const auto line_dist = [](double a, double b) { return std::abs(a - b); };
  const double defect = midpoint_defect_on(line_dist, 0.0, 1.0, 0.0, 2.0, 10000);
  CHECK(defect <= 1e-12);
}

TEST_CASE("moyal ball distance") {
  const double theta = 2.0;
  const double pref = std::sqrt(theta / 2.0);

  SUBCASE("coincident states") {
    CHECK(moyal_ball_distance({0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}, theta) == 0.0);
  }
  SUBCASE("horizontal pairs use the plain Euclidean distance") {
    CHECK(moyal_ball_distance({0.5, 0.0, 0.1}, {-0.5, 0.0, 0.1}, theta) ==
          doctest::Approx(pref * 1.0).epsilon(1e-15));
  }
  SUBCASE("vertical pairs are halved") {
    CHECK(moyal_ball_distance({0.0, 0.0, 0.9}, {0.0, 0.0, -0.1}, theta) ==
          doctest::Approx(pref * 0.5).epsilon(1e-15));
  }
  SUBCASE("branches agree at the pi/4 threshold") {
    // segment with |dz| = horizontal: cos(a) = 1/(2 sin(a)) = 1/sqrt(2)
    const BlochState a{0.0, 0.0, 0.0};
    const BlochState b{0.3, 0.0, 0.3};
    const double d_ec = std::sqrt(0.18);
    CHECK(moyal_ball_distance(a, b, theta) ==
          doctest::Approx(pref * d_ec / std::sqrt(2.0)).epsilon(1e-14));
  }
  SUBCASE("outside the ball is an invariant violation") {
    CHECK_THROWS_AS(moyal_ball_distance({1.1, 0.0, 0.0}, {0, 0, 0}, theta), ParamError);
    CHECK_THROWS_AS(moyal_ball_distance({0, 0, 0}, {0, 0, 0}, -1.0), ParamError);
  }
}

TEST_CASE("moyal ball distance is a metric on random triples") {
  SplitMix64 rng(99);
  for (int t = 0; t < 2000; ++t) {
    const auto a = random_ball_point(rng);
    const auto b = random_ball_point(rng);
    const auto c = random_ball_point(rng);
    const double ab = moyal_ball_distance(a, b, 2.0);
    const double bc = moyal_ball_distance(b, c, 2.0);
    const double ac = moyal_ball_distance(a, c, 2.0);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(ab == moyal_ball_distance(b, a, 2.0));
  }
}

TEST_CASE("jump cost") {
  const auto base = build_grid_line(4, 0.0, 3.0);

  SUBCASE("diagonal is the inverse norm") {
    const auto c = jump_cost(base, {0.25, JumpCostParams::Shift::None});
    for (std::size_t i = 0; i < 4; ++i) CHECK(c(i, i) == 4.0);
    CHECK(!c.vanishing_diagonal());
    CHECK(c(0, 3) == 5.0);  // 3-4-5
  }
  SUBCASE("linear shift restores the vanishing diagonal") {
    const auto c = jump_cost(base, {0.25, JumpCostParams::Shift::Linear});
    for (std::size_t i = 0; i < 4; ++i) CHECK(c(i, i) == 0.0);
    CHECK(c.vanishing_diagonal());
    CHECK(c(0, 3) == 1.0);
  }
  SUBCASE("quadratic shift is rejected below the cost floor") {
    CHECK_THROWS_AS(jump_cost(base, {0.25, JumpCostParams::Shift::Quadratic}), ParamError);
    const auto c = jump_cost(base, {2.0, JumpCostParams::Shift::Quadratic});
    for (std::size_t i = 0; i < 4; ++i) CHECK(c(i, i) == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("dominates both the base metric and the jump") {
    SplitMix64 rng(17);
    const auto space = random_metric_space(rng, 8);
    const auto c = jump_cost(space, {1.7, JumpCostParams::Shift::None});
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        CHECK(c(i, j) >= std::max(space.dist(i, j), 1.0 / 1.7) - 1e-15);
  }
}

TEST_CASE("two_sheet_pure_distance") {
  CHECK(two_sheet_pure_distance(0.0, 0.25) == 4.0);
  CHECK(two_sheet_pure_distance(3.0, 0.25) == 5.0);
  CHECK(two_sheet_pure_distance(7.0, 1e9) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK_THROWS_AS(two_sheet_pure_distance(-1.0, 1.0), ParamError);
  CHECK_THROWS_AS(two_sheet_pure_distance(1.0, 0.0), ParamError);
}

TEST_CASE("two-sheet state distance") {
  SplitMix64 rng(1001);
  const auto base = random_metric_space(rng, 6);
  const auto grid = build_two_sheet(base, 1.5, 5);

  SUBCASE("identical states") {
    const auto w = random_distribution(rng, 6, 4);
    std::vector<double> half(6);
    for (std::size_t i = 0; i < 6; ++i) half[i] = 0.5 * w[i];
    const TwoSheetState s(half, half);
    CHECK(two_sheet_state_distance(grid, s, s) == 0.0);
  }
  SUBCASE("same-sheet states reduce to the base solver value") {
    const std::vector<double> zero(6, 0.0);
    for (int t = 0; t < 6; ++t) {
      const auto a = random_distribution(rng, 6, 1 + rng.below(6));
      const auto b = random_distribution(rng, 6, 1 + rng.below(6));
      const TwoSheetState s1(zero, a.weights());
      const TwoSheetState s2(zero, b.weights());
      const double on_grid = two_sheet_state_distance(grid, s1, s2);
      const double on_base =
          solve_primal(CostMatrix::from_metric_space(base), a, b).value;
      CHECK(std::abs(on_grid - on_base) <= 1e-12);
    }
  }
  SUBCASE("pure cross-sheet states approach the closed form") {
    const auto line = build_grid_line(17, 0.0, 1.0);
    const auto g = build_two_sheet(line, 1.0, 17);
    std::vector<double> mu(17, 0.0), nu(17, 0.0), zero(17, 0.0);
    mu[0] = 1.0;
    nu[16] = 1.0;
    const TwoSheetState s1(mu, zero);
    const TwoSheetState s2(zero, nu);
    const double grid_value = two_sheet_state_distance(g, s1, s2);
    const double closed = two_sheet_pure_distance(line.dist(0, 16), 1.0);
    CHECK(std::abs(grid_value - closed) <= 0.02 * closed);
  }
  SUBCASE("mismatched state sizes are embedding errors") {
    const TwoSheetState s(std::vector<double>(4, 0.125), std::vector<double>(4, 0.125));
    CHECK_THROWS_AS(two_sheet_state_distance(grid, s, s), EmbeddingError);
  }
}

TEST_CASE("jump-cost work equals the product geodesic") {
  SplitMix64 rng(2718);
  const auto base = random_metric_space(rng, 12, 3.0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t x = rng.below(12);
    const std::size_t y = rng.below(12);
    const double norm_di = 0.2 + 2.0 * rng.uniform01();
    const auto rep = jump_work_identity(base, norm_di, x, y);
    CHECK(rep.residual <= 1e-12);
    CHECK(rep.w_jump == rep.d_prime);  // shared kernel: bit-exact
  }
  SUBCASE("x = y pays the diagonal on both sides") {
    const auto rep = jump_work_identity(base, 0.5, 3, 3);
    CHECK(rep.w_jump == 2.0);
    CHECK(rep.d_prime == 2.0);
  }
  SUBCASE("unit case") {
    const auto line = build_grid_line(2, 0.0, 1.0);
    const auto rep = jump_work_identity(line, 1.0, 0, 1);
    CHECK(rep.d_prime == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }
}

TEST_CASE("higgs comparison") {
  const auto line = build_grid_line(65, 0.0, 1.0);

  SUBCASE("constant profile reduces to the closed form") {
    const std::vector<double> profile(65, 1.0);
    const auto rep = higgs_comparison(line, profile, 65, 0, 64);
    CHECK(std::abs(rep.geodesic - rep.tilde_cost) <= 0.02 * rep.tilde_cost);
    CHECK(rep.tilde_cost == two_sheet_pure_distance(1.0, 1.0));
  }
  SUBCASE("doubling the profile shortens the fiber strictly") {
    const std::vector<double> one(65, 1.0), two(65, 2.0);
    const auto r1 = higgs_comparison(line, one, 33, 0, 64);
    const auto r2 = higgs_comparison(line, two, 33, 0, 64);
    CHECK(r2.geodesic < r1.geodesic);
  }
  SUBCASE("linear profile: geodesic undercuts the candidate cost") {
    std::vector<double> profile(65);
    for (std::size_t i = 0; i < 65; ++i)
      profile[i] = 1.0 + static_cast<double>(i) / 64.0;  // 1 -> 2 across [0,1]
    const auto rep = higgs_comparison(line, profile, 65, 0, 64);
    CHECK(rep.geodesic < rep.tilde_cost);
  }
  SUBCASE("nonpositive profiles are rejected") {
    std::vector<double> bad(65, 1.0);
    bad[3] = 0.0;
    CHECK_THROWS_AS(higgs_comparison(line, bad, 9, 0, 64), ParamError);
  }
}
