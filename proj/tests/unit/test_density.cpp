// Represented set sweep, certified measures, cube volumes.
#include <cmath>
#include <random>

#include "cubeshift/density.hpp"
#include "doctest.h"

using namespace cubeshift;

TEST_CASE("single cube: two windows inside [0, 10]") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"0"});
  IntervalSet s = represented_set(f, Rat(0), Rat(10), RealSpec::parse("1/4"));
  REQUIRE(s.intervals.size() == 2);
  CHECK(s.intervals[0].lo == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(s.intervals[0].hi == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(s.intervals[1].lo == doctest::Approx(7.75).epsilon(1e-12));
  CHECK(s.intervals[1].hi == doctest::Approx(8.25).epsilon(1e-12));
  CHECK(s.measure_lo <= 1.0);
  CHECK(s.measure_hi >= 1.0 - 1e-12);
  CHECK(s.measure_hi - s.measure_lo < 1e-12);
  CHECK(s.points == 2);
}

TEST_CASE("windows clip at the range ends") {
  // shift 1/2: x = 1 puts (1/8 - 1/2, 1/8 + 1/2) across the left edge and
  // x = 3 puts (15.125, 16.125) across the right one
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"1/2"});
  IntervalSet s = represented_set(f, Rat(0), Rat(16), RealSpec::parse("1/2"));
  REQUIRE(s.intervals.size() == 3);
  CHECK(s.intervals.front().lo == doctest::Approx(0.0));
  CHECK(s.intervals.front().hi == doctest::Approx(0.625));
  CHECK(s.intervals.back().lo == doctest::Approx(15.125));
  CHECK(s.intervals.back().hi == doctest::Approx(16.0));
}

TEST_CASE("overlapping windows merge") {
  // s = 2, both shifts 0: values 2, 9, 16, ... eta = 4 merges 2 and 9
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"0", "0"});
  IntervalSet s = represented_set(f, Rat(0), Rat(14), RealSpec::parse("4"));
  REQUIRE(!s.intervals.empty());
  CHECK(s.intervals[0].hi > 12.9);  // 9 + 4 = 13 reaches past 2 + 4
  for (size_t i = 0; i + 1 < s.intervals.size(); ++i)
    CHECK(s.intervals[i].hi < s.intervals[i + 1].lo);
}

TEST_CASE("unrepresented measure is the exact complement") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> b(6, 30), e(1, 4);
  for (int inst = 0; inst < 8; ++inst) {
    ShiftedCubeForm f = ShiftedCubeForm::from_strings(
        {inst % 2 ? "1/2" : "surd:0,1,2,2", "1/3"});
    Rat hi(b(rng));
    RealSpec eta = RealSpec::from_rat(Rat(e(rng), 4));
    IntervalSet s = represented_set(f, Rat(0), hi, eta);
    MeasureBracket un = unrepresented_measure(f, Rat(0), hi, eta);
    double total = hi.get_d();
    CHECK(un.lo == doctest::Approx(total - s.measure_hi).epsilon(1e-12));
    CHECK(un.hi == doctest::Approx(total - s.measure_lo).epsilon(1e-12));
    CHECK(un.lo <= un.hi);

    double sum = 0;
    for (auto& iv : s.intervals) sum += iv.hi - iv.lo;
    CHECK(sum == doctest::Approx((s.measure_lo + s.measure_hi) / 2).epsilon(1e-9));
  }
}

TEST_CASE("irrational shifts trim the boundary exactly") {
  // With mu = sqrt2/2 the window ends are irrational: the sweep's exact
  // recheck path must still produce a complementary bracket.
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"surd:0,1,2,2"});
  IntervalSet s = represented_set(f, Rat(0), Rat(30), RealSpec::parse("1/8"));
  MeasureBracket un = unrepresented_measure(f, Rat(0), Rat(30), RealSpec::parse("1/8"));
  CHECK(s.measure_lo + un.hi == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(s.measure_hi + un.lo == doctest::Approx(30.0).epsilon(1e-12));
}

TEST_CASE("density profile: geometric prefixes, sane fractions") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"0"});
  DensityProfile p = density_profile(f, Rat(256), RealSpec::parse("1/5"), 5);
  REQUIRE(p.prefixes.size() == 5);
  CHECK(p.prefixes.back() == doctest::Approx(256.0));
  CHECK(p.prefixes.front() == doctest::Approx(16.0));
  CHECK_FALSE(p.truncated);
  for (size_t k = 0; k < p.prefixes.size(); ++k) {
    CHECK(p.unrep_fraction_lo[k] <= p.unrep_fraction_hi[k]);
    CHECK(p.unrep_fraction_lo[k] >= 0.0);
    CHECK(p.unrep_fraction_hi[k] <= 1.0);
    CHECK(p.rep_lo[k] <= p.rep_hi[k] + 1e-12);
  }
  // cubes are sparse: most of [0, 256] stays unrepresented
  CHECK(p.unrep_fraction_lo.back() > 0.8);
}

TEST_CASE("budget guard trips before enumeration explodes") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"0", "0", "0"});
  CHECK_THROWS_AS(
      (void)represented_set(f, Rat(0), Rat(1000000000), RealSpec::parse("1/2")),
      BudgetError);
}

TEST_CASE("volume bound theorem formula and growth") {
  // 2 eta (N + 10 N^(2/3)) V3 at eta = 0.1, N = 1000
  double v3 = closed_cube_volume(3);
  CHECK(volume_bound_theorem4(0.1, 1000.0) ==
        doctest::Approx(0.2 * (1000.0 + 10.0 * 100.0) * v3).epsilon(1e-12));
  CHECK(volume_bound_theorem4(0.1, 8000.0) > volume_bound_theorem4(0.1, 1000.0));
}

TEST_CASE("cube volume: closed form against quasi Monte Carlo") {
  CHECK(closed_cube_volume(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(closed_cube_volume(3) == doctest::Approx(0.7120729426887).epsilon(1e-9));
  CHECK(closed_cube_volume(2) ==
        doctest::Approx(std::pow(std::tgamma(4.0 / 3.0), 2) / std::tgamma(5.0 / 3.0))
            .epsilon(1e-12));
  CHECK(qmc_cube_volume(3, 400000) == doctest::Approx(closed_cube_volume(3)).epsilon(3e-4));
  CHECK(qmc_cube_volume(2, 400000) == doctest::Approx(closed_cube_volume(2)).epsilon(3e-4));
}
