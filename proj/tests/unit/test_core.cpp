// Spec parsing, exact form evaluation, window semantics, boxes.
#include <random>

#include "cubeshift/forms.hpp"
#include "doctest.h"

using namespace cubeshift;

TEST_CASE("real specs parse and round-trip") {
  CHECK(RealSpec::parse("1/2").exact().as_rational() == Rat(1, 2));
  CHECK(RealSpec::parse("-3").exact().as_rational() == -3);

  RealSpec s = RealSpec::parse("surd:1,1,2,2");  // (1 + sqrt 2)/2
  CHECK(s.is_surd());
  CHECK(s.approx() == doctest::Approx(1.2071067811865475));
  CHECK(RealSpec::parse(s.to_string()).exact() == s.exact());

  RealSpec d = RealSpec::parse("dec:0.125");
  CHECK(d.is_decimal());
  CHECK(d.exact().as_rational() == Rat(1, 8));
  CHECK_FALSE(d.declared_irrational());
  CHECK(RealSpec::parse("dec:0.333!irr").declared_irrational());
  CHECK(RealSpec::parse("dec:25e-2").exact().as_rational() == Rat(1, 4));
}

TEST_CASE("malformed specs are rejected, not truncated") {
  for (const char* bad : {"1//2", "1/0", "", "surd:1,1", "surd:0,1,4,1", "surd:0,1,2,0",
                          "dec:1.2.3", "dec:", "0x10", "two"})
    CHECK_THROWS_AS((void)RealSpec::parse(bad), SpecError);
}

TEST_CASE("decimal shifts need 30 digits before evaluating") {
  RealSpec coarse = RealSpec::parse("dec:0.7071!irr");
  CHECK_THROWS_AS(coarse.validate_for_eval(), SpecError);
  RealSpec fine =
      RealSpec::parse("dec:0.707106781186547524400844362105!irr");
  CHECK_NOTHROW(fine.validate_for_eval());
  CHECK(fine.significant_digits() >= 30);

  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"dec:0.7071!irr", "0"});
  CHECK_THROWS_AS((void)eval_form(f, {1, 1}), SpecError);
}

TEST_CASE("form evaluation is exact") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"1/2", "surd:0,1,2,2"});
  // (2 - 1/2)^3 = 27/8; (1 - sqrt2/2)^3 = 5/2 - 7 sqrt2 / 4
  FieldReal v = eval_form(f, {2, 1});
  FieldReal want = FieldReal(Rat(27, 8)) + FieldReal(Rat(5, 2)) -
                   FieldReal::surd(Rat(7, 4), 2);
  CHECK((v - want).is_zero());
}

TEST_CASE("evaluation is invariant under paired permutation") {
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"1/3", "surd:0,1,3,1", "-2/7"});
  ShiftedCubeForm g = ShiftedCubeForm::from_strings({"-2/7", "1/3", "surd:0,1,3,1"});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int64_t> pick(-8, 8);
  for (int i = 0; i < 50; ++i) {
    int64_t x0 = pick(rng), x1 = pick(rng), x2 = pick(rng);
    CHECK((eval_form(f, {x0, x1, x2}) - eval_form(g, {x2, x0, x1})).is_zero());
  }
}

TEST_CASE("cubic systems subsume shifted cubes") {
  // (x - mu)^3 expanded: b3=1, b2=-3mu, b1=3mu^2, b0=-mu^3 with mu = sqrt2/2
  CubicSystem h;
  h.polys.push_back({RealSpec::parse("1"), RealSpec::parse("surd:0,-3,2,2"),
                     RealSpec::parse("3/2"), RealSpec::parse("surd:0,-1,2,4")});
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"surd:0,1,2,2"});
  for (int64_t x = -5; x <= 5; ++x)
    CHECK((eval_system(h, {x}) - eval_form(f, {x})).is_zero());

  CubicSystem back = CubicSystem::from_json(h.to_json());
  CHECK((back.polys[0].eval_int(3) - h.polys[0].eval_int(3)).is_zero());
}

TEST_CASE("form json rejects junk") {
  CHECK_THROWS_AS((void)ShiftedCubeForm::from_json("{\"shifts\": \"1/2\"}"), SpecError);
  CHECK_THROWS_AS((void)ShiftedCubeForm::from_json("not json"), SpecError);
  ShiftedCubeForm f = ShiftedCubeForm::from_json("{\"shifts\": [\"1/2\", \"0\"]}");
  CHECK(f.s() == 2);
}

TEST_CASE("window boundary never counts") {
  Window w(RealSpec::parse("2"), RealSpec::parse("1"));
  CHECK(in_window(FieldReal(Rat(3, 2)), w));
  CHECK_FALSE(in_window(FieldReal(1L), w));  // |1 - 2| = eta exactly
  CHECK_FALSE(in_window(FieldReal(3L), w));
  CHECK_THROWS_AS(Window(RealSpec::parse("0"), RealSpec::parse("0")), SpecError);
  CHECK_THROWS_AS(Window(RealSpec::parse("0"), RealSpec::parse("-1")), SpecError);
}

TEST_CASE("window membership is monotone in eta") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-50, 50);
  for (int i = 0; i < 200; ++i) {
    Rat v(num(rng), 7), tau(num(rng), 5);
    Rat eta(std::abs(num(rng)) + 1, 13);
    Window small(RealSpec::from_rat(tau), RealSpec::from_rat(eta));
    Window wide(RealSpec::from_rat(tau), RealSpec::from_rat(eta * 2));
    if (in_window(FieldReal(v), small)) CHECK(in_window(FieldReal(v), wide));
  }
}

TEST_CASE("interval window check: decisive on boundaries, honest inside noise") {
  Window w(RealSpec::parse("2"), RealSpec::parse("1"));
  // the exact boundary produces a zero-sign interval, decided as outside
  CHECK(in_window(FieldReal(1L).enclose(96), w) == Ternary::False);
  CHECK_FALSE(in_window_checked(FieldReal(1L).enclose(96), w));
  CHECK(in_window(FieldReal(Rat(3, 2)).enclose(96), w) == Ternary::True);

  // a 10^-40 offset is invisible at 96 bits: undecidable, never guessed
  Int ten40("10000000000000000000000000000000000000000");
  FieldReal near = FieldReal(1L) + FieldReal(Rat(Int(1), ten40));
  CHECK(in_window(near.enclose(96), w) == Ternary::Undecidable);
  CHECK_THROWS_AS((void)in_window_checked(near.enclose(96), w), PrecisionError);
  CHECK(in_window(near, w));  // exact path decides: strictly inside
}

TEST_CASE("search boxes parse and count") {
  SearchBox b = SearchBox::parse("0:4,-2:2", 2);
  CHECK(b.ranges.size() == 2);
  CHECK(b.cardinality() == 16);
  CHECK_THROWS_AS((void)SearchBox::parse("0:4", 2), SpecError);
  CHECK_THROWS_AS((void)SearchBox::parse("0:4,junk", 2), SpecError);
}

TEST_CASE("default box reaches exactly the feasible corner") {
  // mu = 1/2, tau + eta = 27/8: largest x with (x - 1/2)^3 <= 27/8 is x = 2
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"1/2"});
  Window w(RealSpec::parse("25/8"), RealSpec::parse("1/4"));
  SearchBox b = default_box(f, w);
  CHECK(b.ranges[0].first == 0);   // floor(mu)
  CHECK(b.ranges[0].second == 2);  // (2 - 1/2)^3 = 27/8 on the nose
}
