// Exact numeric tower: field elements over Q(sqrt m1, ..., sqrt mk), the
// fixed-point accumulators, and the interval layer they certify against.
#include <cmath>

#include "cubeshift/fieldreal.hpp"
#include "cubeshift/fixed192.hpp"
#include "cubeshift/interval.hpp"
#include "doctest.h"

using namespace cubeshift;

static FieldReal sqrt_of(unsigned long d) { return FieldReal::surd(Rat(1), d); }

TEST_CASE("surd product lands in the right basis") {
  // sqrt(2) * sqrt(8) = 4 exactly, no floating point involved
  FieldReal p = sqrt_of(2) * sqrt_of(8);
  CHECK(p.is_rational());
  CHECK(p.as_rational() == 4);

  // (sqrt 2 + sqrt 3)^2 = 5 + 2 sqrt 6
  FieldReal q = (sqrt_of(2) + sqrt_of(3)).square();
  CHECK(q.rational_part() == 5);
  CHECK(q.surd_terms().size() == 1);
  CHECK(q.surd_terms().at(6) == 2);
}

TEST_CASE("radicands canonicalize to squarefree") {
  // sqrt(18) = 3 sqrt(2)
  FieldReal v = sqrt_of(18);
  CHECK(v.surd_terms().size() == 1);
  CHECK(v.surd_terms().at(2) == 3);
  auto [f, m] = squarefree_split(16);
  CHECK(f == 4);
  CHECK(m == 1);
}

TEST_CASE("zero test is syntactic and sign is exact") {
  FieldReal z = sqrt_of(2) * sqrt_of(3) - sqrt_of(6);
  CHECK(z.is_zero());

  // 99/70 > sqrt(2) although they agree to 4 decimals
  FieldReal d = FieldReal(Rat(99, 70)) - sqrt_of(2);
  CHECK(d.sign() == 1);
  // and 140/99 < sqrt(2) from the other side
  CHECK((FieldReal(Rat(140, 99)) - sqrt_of(2)).sign() == -1);

  // sums mixing several radicals still decide
  FieldReal w = sqrt_of(2) + sqrt_of(3) - sqrt_of(5) - FieldReal(Rat(909, 1000));
  CHECK(w.sign() == (std::sqrt(2.0) + std::sqrt(3.0) - std::sqrt(5.0) > 0.909 ? 1 : -1));
}

TEST_CASE("inverse is exact in the field") {
  // 1/(1 + sqrt 2) = sqrt 2 - 1
  FieldReal v = FieldReal(1L) + sqrt_of(2);
  FieldReal inv = v.inverse();
  CHECK((inv - (sqrt_of(2) - FieldReal(1L))).is_zero());
  CHECK((v * inv - FieldReal(1L)).is_zero());

  FieldReal zero;
  CHECK_THROWS_AS((void)zero.inverse(), SpecError);
}

TEST_CASE("floor is exact, including negatives") {
  CHECK(sqrt_of(2).scaled(Rat(100)).floor() == 141);
  CHECK((-sqrt_of(2)).floor() == -2);
  CHECK(FieldReal(Rat(-7, 2)).floor() == -4);
  CHECK(FieldReal(Rat(7, 2)).floor() == 3);
}

TEST_CASE("decimal rendering is correctly rounded") {
  CHECK(sqrt_of(2).decimal(20) == "1.4142135623730950488");
  CHECK(FieldReal(Rat(1, 3)).decimal(10) == "0.3333333333");
  CHECK(sqrt_of(2).to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("enclosures narrow with precision and always contain the value") {
  FieldReal v = sqrt_of(2) + sqrt_of(3).scaled(Rat(1, 7));
  double target = std::sqrt(2.0) + std::sqrt(3.0) / 7;
  Interval a = v.enclose(96), b = v.enclose(192);
  CHECK(a.lo_d() <= target);
  CHECK(target <= a.hi_d());
  CHECK(b.width_d() < a.width_d() + 1e-30);
  CHECK(b.width_d() < 1e-50);
}

TEST_CASE("fixed point addition is exact and ordered") {
  using F = Fixed192<128>;
  F a = F::from_int(3), b = F::from_int(-5);
  CHECK((a + b).floor_int() == -2);
  CHECK((a - b).floor_int() == 8);
  CHECK(a > b);
  CHECK((a + (-a)) == F::zero());

  // one ulp wiggles never cross an integer-scale gap
  F c = F::from_int(1).nudged(-1);
  CHECK(c < F::from_int(1));
  CHECK(c.floor_int() == 0);
}

TEST_CASE("fixed point conversion brackets the field value") {
  FieldReal v = sqrt_of(5).scaled(Rat(13, 9));
  auto lo = FixSum::from_field_lo(v), hi = FixSum::from_field_hi(v);
  CHECK(lo <= hi);
  double d = v.to_double();
  CHECK(lo.to_double() == doctest::Approx(d).epsilon(1e-14));
  CHECK(hi.to_double() == doctest::Approx(d).epsilon(1e-14));
  CHECK_THROWS_AS((void)FixSum::from_scaled_int(Int(1) << 191), BudgetError);
}

TEST_CASE("interval sign escalates instead of guessing") {
  // 96 bits cannot separate these; the exact path can
  FieldReal tiny = sqrt_of(2) - FieldReal(Rat(665857, 470832));  // ~ -2e-12
  Interval i = tiny.enclose(32);
  CHECK(i.sign() == Interval::kAmbiguous);
  CHECK(tiny.sign() == -1);
  CHECK(tiny.enclose(128).sign() == -1);
}

TEST_CASE("int64 extraction guards its range") {
  CHECK(to_i64(Int(42)) == 42);
  CHECK_THROWS_AS((void)to_i64(Int("123456789012345678901234567890")), BudgetError);
}
