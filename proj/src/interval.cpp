#include "cubeshift/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace cubeshift {

Interval Interval::from_int(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::from_rat(const Rat& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::sqrt_ui(unsigned long m, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_sqrt_ui(r.lo_.get(), m, MPFR_RNDD);
  mpfr_sqrt_ui(r.hi_.get(), m, MPFR_RNDU);
  return r;
}

Interval Interval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set(r.lo_.get(), lo, MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi, MPFR_RNDU);
  return r;
}

Interval Interval::add(const Interval& o) const {
  Interval r(prec_);
  mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::sub(const Interval& o) const {
  Interval r(prec_);
  mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::neg() const {
  Interval r(prec_);
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::abs() const {
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) return neg();
  Interval r(prec_);
  mpfr_set_zero(r.lo_.get(), 1);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_cmp(hi_.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::mul(const Interval& o) const {
  Interval r(prec_);
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
  mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
  bool first = true;
  for (auto x : a)
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval Interval::cube() const {
  Interval r(prec_);
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_sqr(t, lo_.get(), MPFR_RNDD);
  // lo >= 0: lo^3 rounds down cleanly; lo < 0: need sqr rounded up first.
  if (mpfr_sgn(lo_.get()) >= 0) {
    mpfr_mul(r.lo_.get(), t, lo_.get(), MPFR_RNDD);
  } else {
    mpfr_sqr(t, lo_.get(), MPFR_RNDU);
    mpfr_mul(r.lo_.get(), t, lo_.get(), MPFR_RNDD);
  }
  if (mpfr_sgn(hi_.get()) >= 0) {
    mpfr_sqr(t, hi_.get(), MPFR_RNDU);
    mpfr_mul(r.hi_.get(), t, hi_.get(), MPFR_RNDU);
  } else {
    mpfr_sqr(t, hi_.get(), MPFR_RNDD);
    mpfr_mul(r.hi_.get(), t, hi_.get(), MPFR_RNDU);
  }
  mpfr_clear(t);
  return r;
}

int Interval::sign() const {
  int sl = mpfr_sgn(lo_.get()), sh = mpfr_sgn(hi_.get());
  if (sl > 0) return 1;
  if (sh < 0) return -1;
  if (sl == 0 && sh == 0) return 0;
  return kAmbiguous;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

double Interval::mid_d() const {
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_add(t, lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(t, t, 1, MPFR_RNDN);
  double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

double Interval::width_d() const {
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_sub(t, hi_.get(), lo_.get(), MPFR_RNDU);
  double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

std::string Interval::decimal(int digits) const {
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_add(t, lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(t, t, 1, MPFR_RNDN);
  char buf[512];
  mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, t);
  mpfr_clear(t);
  return buf;
}

}  // namespace cubeshift
