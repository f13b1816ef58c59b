// Solvers and counters: brute force as oracle, meet-in-the-middle as
// workhorse, histogram brackets, moment counts.
#include <random>

#include "cubeshift/solver.hpp"
#include "doctest.h"

using namespace cubeshift;

namespace {

Window window(const char* tau, const char* eta) {
  return Window(RealSpec::parse(tau), RealSpec::parse(eta));
}

// random shift spec: rational p/q or a quadratic surd
std::string random_shift(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9), d(2, 10), kind(0, 2);
  if (kind(rng) == 2) {
    int rad = d(rng);
    if (rad == 4 || rad == 9) rad = 5;
    return "surd:" + std::to_string(num(rng)) + ",1," + std::to_string(rad) + "," +
           std::to_string(den(rng));
  }
  return std::to_string(num(rng)) + "/" + std::to_string(den(rng));
}

}  // namespace

TEST_CASE("taxicab windows count the classical representations") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"0", "0"});
  CHECK(count_window(f, window("1729", "1/2")) == 4);   // 1,12 / 9,10 ordered
  CHECK(count_window(f, window("4104", "1/2")) == 4);   // 2,16 / 9,15
  CHECK(count_window(f, window("1730", "1/2")) == 0);

  ShiftedCubeForm g = ShiftedCubeForm::from_strings({"0", "0", "0"});
  CHECK(count_window(g, window("36", "1/2")) == 6);  // permutations of (1,2,3)
}

TEST_CASE("boundary values are excluded by every solver") {
  // x^3 in (1, 3): x = 1 gives |1 - 2| = eta exactly
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"0"});
  Window w = window("2", "1");
  SearchBox box = SearchBox::parse("0:3", 1);
  CHECK(brute_force_solve(f, w, box).empty());
  CHECK(mitm_solve(f, w, box, true).count == 0);
}

TEST_CASE("mitm equals brute force on randomized instances") {
  std::mt19937 rng(20260815);
  std::uniform_int_distribution<int> sdist(1, 4), lo(-6, 0), len(3, 8);
  for (int inst = 0; inst < 60; ++inst) {
    int s = sdist(rng);
    std::vector<std::string> shifts;
    for (int i = 0; i < s; ++i) shifts.push_back(random_shift(rng));
    ShiftedCubeForm f = ShiftedCubeForm::from_strings(shifts);
    SearchBox box;
    for (int i = 0; i < s; ++i) {
      int64_t a = lo(rng);
      box.ranges.push_back({a, a + len(rng)});
    }
    std::uniform_int_distribution<int> tau(-40, 40), eta(1, 8);
    Window w(RealSpec::from_rat(Rat(tau(rng))), RealSpec::from_rat(Rat(eta(rng), 3)));

    auto oracle = brute_force_solve(f, w, box);
    EnumResult fast = mitm_solve(f, w, box, true);
    REQUIRE(fast.count == oracle.size());
    REQUIRE(fast.solutions.size() == oracle.size());
    for (size_t i = 0; i < oracle.size(); ++i) {
      CHECK(fast.solutions[i].x == oracle[i].x);
      CHECK((fast.solutions[i].value - oracle[i].value).is_zero());
    }
  }
}

TEST_CASE("solution lists are sorted and deviations certified") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"1/2", "surd:0,1,2,2"});
  Window w = window("30", "3");
  SearchBox box = SearchBox::parse("-4:4,-4:4", 2);
  auto sols = brute_force_solve(f, w, box);
  for (size_t i = 0; i + 1 < sols.size(); ++i) CHECK(sols[i].x < sols[i + 1].x);
  for (auto& r : sols) {
    CHECK((r.value - eval_form(f, r.x)).is_zero());
    CHECK(r.deviation.cmp(w.eta_exact) < 0);
    CHECK(r.deviation.sign() >= 0);
  }
}

TEST_CASE("count_window needs no box and matches an oversized explicit one") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"1/2", "1/3"});
  Window w = window("50", "2/3");
  uint64_t derived = count_window(f, w);
  SearchBox big = SearchBox::parse("-1:6,-1:6", 2);
  CHECK(derived == mitm_solve(f, w, big, false).count);
}

TEST_CASE("histogram brackets the exact count and tightens with the bin") {
  std::mt19937 rng(99);
  for (int inst = 0; inst < 12; ++inst) {
    std::uniform_int_distribution<int> s(2, 4), tau(5, 200);
    std::vector<std::string> shifts;
    int n = s(rng);
    for (int i = 0; i < n; ++i) shifts.push_back(random_shift(rng));
    ShiftedCubeForm f = ShiftedCubeForm::from_strings(shifts);
    Window w(RealSpec::from_rat(Rat(tau(rng))), RealSpec::from_rat(Rat(1, 2)));
    uint64_t exact = count_window(f, w);

    CountBracket coarse = histogram_count(f, w, Rat(1, 4));
    CountBracket fine = histogram_count(f, w, Rat(1, 8));
    CHECK(coarse.lower <= exact);
    CHECK(exact <= coarse.upper);
    CHECK(fine.lower <= exact);
    CHECK(exact <= fine.upper);
    // halving the bin never widens the bracket
    CHECK(coarse.lower <= fine.lower);
    CHECK(fine.upper <= coarse.upper);
  }
}

TEST_CASE("degenerate s=1 window works without a split") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"surd:0,1,2,2"});
  // (x - sqrt2/2)^3 near 10: x = 2 gives about 2.16, x = 3 about 12.05
  CHECK(count_window(f, window("12", "1/10")) == 1);
  CHECK(histogram_count(f, window("12", "1/10"), Rat(1, 16)).upper >= 1);
}

TEST_CASE("asymptotic main term follows the closed formula") {
  // s = 3: 2 eta Gamma(4/3)^3 / Gamma(1) tau^0
  CHECK(asymptotic_main_term(3, 0.5, 1000.0) == doctest::Approx(0.7120729426887).epsilon(1e-9));
  // doubling eta doubles it; tau exponent is s/3 - 1
  CHECK(asymptotic_main_term(3, 1.0, 77.0) ==
        doctest::Approx(2 * asymptotic_main_term(3, 0.5, 77.0)).epsilon(1e-12));
  CHECK(asymptotic_main_term(6, 0.5, 100.0) ==
        doctest::Approx(asymptotic_main_term(6, 0.5, 25.0) * 4).epsilon(1e-12));
}

TEST_CASE("moment ranges honor exact power boundaries") {
  // P = 64: secondary exponent 5/6 gives (32, 64] exactly
  MomentRanges r = MomentRanges::shifted(64);
  CHECK(r.primary == std::pair<int64_t, int64_t>{64, 128});
  CHECK(r.secondary == std::pair<int64_t, int64_t>{32, 64});
  CHECK(r.exp_num == 5);
  CHECK(r.exp_den == 6);

  MomentRanges g = MomentRanges::general(32, 2.0);
  CHECK(g.primary == std::pair<int64_t, int64_t>{32, 64});
  CHECK(g.secondary == std::pair<int64_t, int64_t>{16, 32});  // 32^(4/5) = 16
  CHECK(g.exp_num == 4);
  CHECK(g.exp_den == 5);
}

TEST_CASE("fourth moment counts include the diagonal floor") {
  MomentCount c = count_S4_shifted(RealSpec::parse("surd:0,1,2,1"),
                                   RealSpec::parse("surd:0,1,3,1"), 40, Rat(1, 2));
  CHECK(c.count >= c.diagonal);
  uint64_t n1 = (uint64_t)(c.ranges.primary.second - c.ranges.primary.first);
  uint64_t n2 = (uint64_t)(c.ranges.secondary.second - c.ranges.secondary.first);
  CHECK(c.diagonal == n1 * n2);
}

TEST_CASE("gap check: cubics spread beyond eta on dyadic ranges") {
  CubicPolynomial h{RealSpec::parse("1"), RealSpec::parse("0"), RealSpec::parse("0"),
                    RealSpec::parse("0")};
  CHECK(diagonal_only_check(h, 50, Rat(1, 2)));
  // (2, 4] holds 3 and 4 with |27 - 64| = 37 < 40: off-diagonal pair collides
  CHECK_FALSE(diagonal_only_check(h, 2, Rat(40)));
}
