#include <mpfr.h>

#include <cmath>

#include "cubeshift/circle.hpp"

namespace cubeshift {

namespace {

constexpr int kTrigPrec = 128;
constexpr int kGridBits = 60;

// Accumulates e(phase) terms on a 2^-60 integer grid. Each term is rounded
// once; the running sums are exact integers, so rearranged partial sums
// (the f2 = f1(2X) - f1(X) identity) agree bit for bit.
struct GridAccum {
  __int128 re = 0, im = 0;
  uint64_t terms = 0;
  mpfr_t ang, s, c, scaled;

  GridAccum() {
    mpfr_init2(ang, kTrigPrec);
    mpfr_init2(s, kTrigPrec);
    mpfr_init2(c, kTrigPrec);
    mpfr_init2(scaled, kTrigPrec);
  }
  ~GridAccum() {
    mpfr_clears(ang, s, c, scaled, (mpfr_ptr) nullptr);
  }
  GridAccum(const GridAccum&) = delete;

  int64_t grid(mpfr_srcptr v) {
    mpfr_mul_2si(scaled, v, kGridBits, MPFR_RNDN);  // exact, exponent shift
    return (int64_t)mpfr_get_si(scaled, MPFR_RNDN);
  }

  // frac: fractional part of the phase (in units of full turns)
  void add(mpfr_srcptr frac) {
    mpfr_const_pi(ang, MPFR_RNDN);
    mpfr_mul_2ui(ang, ang, 1, MPFR_RNDN);
    mpfr_mul(ang, ang, frac, MPFR_RNDN);
    mpfr_sin_cos(s, c, ang, MPFR_RNDN);
    re += grid(c);
    im += grid(s);
    ++terms;
  }

  ExpSum finish() const {
    ExpSum out;
    out.re_grid = re;
    out.im_grid = im;
    out.terms = terms;
    out.value = {std::ldexp((double)re, -kGridBits), std::ldexp((double)im, -kGridBits)};
    return out;
  }
};

int bit_length(int64_t x) {
  uint64_t u = x < 0 ? (uint64_t)(-x) : (uint64_t)x;
  return u == 0 ? 1 : 64 - __builtin_clzll(u);
}

// magnitude exponent of a FieldReal, deterministic per value
long mag_exponent(const FieldReal& v) {
  if (v.is_zero()) return 0;
  Interval e = v.enclose(64);
  long a = mpfr_zero_p(e.lo()) ? -1000 : mpfr_get_exp(e.lo());
  long b = mpfr_zero_p(e.hi()) ? -1000 : mpfr_get_exp(e.hi());
  return std::max({a, b, 0L});
}

// FieldReal to mpfr at prec bits (deterministic: lower enclosure endpoint)
void set_from_field(mpfr_ptr dst, const FieldReal& v, mpfr_prec_t prec) {
  mpfr_set_prec(dst, prec);
  Interval e = v.enclose(prec + 16);
  mpfr_set(dst, e.lo(), MPFR_RNDN);
}

}  // namespace

ExpSum weyl_sum(int j, const RealSpec& alpha, const RealSpec& mu, double x_cap) {
  if (j != 1 && j != 2) throw SpecError("weyl_sum needs j in {1, 2}");
  if (!(x_cap > 0) || x_cap > 1e7) throw BudgetError("weyl_sum supports 0 < X <= 1e7");
  mu.validate_for_eval();
  FieldReal a = alpha.exact(), m = mu.exact();
  long ea = mag_exponent(a), em = mag_exponent(m);

  int64_t x_lo = (int64_t)std::floor((j - 1) * x_cap);
  int64_t x_hi = (int64_t)std::floor(j * x_cap);

  GridAccum acc;
  mpfr_t am, mm, t, ph;
  mpfr_inits2(64, am, mm, t, ph, (mpfr_ptr) nullptr);
  int cur_bits = -1;
  for (int64_t x = x_lo + 1; x <= x_hi; ++x) {
    int b = bit_length(x);
    if (b != cur_bits) {
      cur_bits = b;
      // precision keyed only to (alpha, mu, bit bucket of x): terms shared
      // between overlapping ranges are computed identically
      mpfr_prec_t p = 352 + 3 * (b + (int)std::max(em, 0L)) + ea;
      set_from_field(am, a, p);
      set_from_field(mm, m, p);
      mpfr_set_prec(t, p);
      mpfr_set_prec(ph, p);
    }
    mpfr_set_si(t, (long)x, MPFR_RNDN);
    mpfr_sub(t, t, mm, MPFR_RNDN);
    mpfr_sqr(ph, t, MPFR_RNDN);
    mpfr_mul(ph, ph, t, MPFR_RNDN);
    mpfr_mul(ph, ph, am, MPFR_RNDN);
    mpfr_frac(ph, ph, MPFR_RNDN);
    acc.add(ph);
  }
  mpfr_clears(am, mm, t, ph, (mpfr_ptr) nullptr);
  return acc.finish();
}

namespace {

// shared core: sum of e(q2 x^2 + q1 x + q0) over (lo, hi] with exact
// FieldReal coefficients converted per bit bucket
void quadratic_phase_sum(GridAccum& acc, const FieldReal& q2, const FieldReal& q1,
                         const FieldReal& q0, int64_t lo, int64_t hi) {
  long ea = std::max({mag_exponent(q2), mag_exponent(q1), mag_exponent(q0)});
  mpfr_t c2, c1, c0, ph;
  mpfr_inits2(64, c2, c1, c0, ph, (mpfr_ptr) nullptr);
  int cur_bits = -1;
  for (int64_t x = lo + 1; x <= hi; ++x) {
    int b = bit_length(x);
    if (b != cur_bits) {
      cur_bits = b;
      mpfr_prec_t p = 352 + 2 * b + ea;
      set_from_field(c2, q2, p);
      set_from_field(c1, q1, p);
      set_from_field(c0, q0, p);
      mpfr_set_prec(ph, p);
    }
    mpfr_mul_si(ph, c2, (long)x, MPFR_RNDN);
    mpfr_add(ph, ph, c1, MPFR_RNDN);
    mpfr_mul_si(ph, ph, (long)x, MPFR_RNDN);
    mpfr_add(ph, ph, c0, MPFR_RNDN);
    mpfr_frac(ph, ph, MPFR_RNDN);
    acc.add(ph);
  }
  mpfr_clears(c2, c1, c0, ph, (mpfr_ptr) nullptr);
}

void differenced_into(GridAccum& acc, const CubicPolynomial& h1, const FieldReal& a,
                      int64_t hstep, int64_t lo, int64_t hi) {
  // h1(x+h) - h1(x) = 3 b3 h x^2 + (3 b3 h^2 + 2 b2 h) x + (b3 h^3 + b2 h^2 + b1 h)
  FieldReal b3 = h1.b3.exact(), b2 = h1.b2.exact(), b1 = h1.b1.exact();
  FieldReal h{Rat((long)hstep)};
  FieldReal d2 = b3.scaled(Rat(3)) * h;
  FieldReal d1 = b3.scaled(Rat(3)) * h * h + b2.scaled(Rat(2)) * h;
  FieldReal d0 = b3 * h * h * h + b2 * h * h + b1 * h;
  quadratic_phase_sum(acc, a * d2, a * d1, a * d0, lo, hi);
}

}  // namespace

ExpSum differenced_weyl_sum(const CubicPolynomial& h1, const RealSpec& alpha, int64_t hstep,
                            int64_t lo, int64_t hi) {
  if (hstep < 1) throw SpecError("differenced sum needs hstep >= 1");
  if (hi < lo) throw SpecError("empty range");
  if (hi - lo > 10000000) throw BudgetError("differenced sum range exceeds 1e7");
  h1.validate_for_eval();
  GridAccum acc;
  differenced_into(acc, h1, alpha.exact(), hstep, lo, hi);
  return acc.finish();
}

ExpSum aggregated_differenced_sum(const CubicPolynomial& h1, const RealSpec& alpha,
                                  int64_t h_max, int64_t lo, int64_t hi) {
  if (h_max < 1) throw SpecError("aggregate needs H >= 1");
  if (hi < lo) throw SpecError("empty range");
  if ((hi - lo) * h_max > 20000000) throw BudgetError("aggregate exceeds 2e7 terms");
  h1.validate_for_eval();
  FieldReal a = alpha.exact();
  GridAccum acc;
  for (int64_t h = 1; h <= h_max; ++h) differenced_into(acc, h1, a, h, lo, hi);
  return acc.finish();
}

ExpSum complete_exp_sum(int64_t q, int64_t v1, int64_t v2, int64_t v3) {
  if (q < 1) throw SpecError("complete sum needs q >= 1");
  if (q > 1000000) throw BudgetError("complete sum supports q <= 1e6");
  auto mod = [&](int64_t v) { return (uint64_t)(((v % q) + q) % q); };
  uint64_t w1 = mod(v1), w2 = mod(v2), w3 = mod(v3), uq = (uint64_t)q;

  GridAccum acc;
  mpfr_t ph;
  mpfr_init2(ph, kTrigPrec);
  for (uint64_t x = 1; x <= uq; ++x) {
    uint64_t r = (((w3 * x + w2) % uq) * x + w1) % uq * x % uq;
    mpfr_set_ui(ph, (unsigned long)r, MPFR_RNDN);
    mpfr_div_ui(ph, ph, (unsigned long)uq, MPFR_RNDN);
    acc.add(ph);
  }
  mpfr_clear(ph);
  return acc.finish();
}

}  // namespace cubeshift
