#pragma once

#include <mpfr.h>

#include <cmath>
#include <compare>
#include <cstdint>

#include "cubeshift/fieldreal.hpp"
#include "cubeshift/numeric.hpp"

namespace cubeshift {

// Two's-complement 192-bit fixed point with FRAC fractional bits. Addition is
// exact, so bulk sums are associative and certified: rounding enters only when
// a table value is built (error in [0, ulp) with downward rounding). The
// solver uses FRAC=128 (range +-2^63), the density sweep FRAC=160 (+-2^31,
// measure error bars below 2^-150 as required).
template <int FRAC>
struct Fixed192 {
  static_assert(FRAC > 64 && FRAC < 191);
  uint64_t w[3];  // little-endian limbs

  static Fixed192 zero() { return {{0, 0, 0}}; }

  static Fixed192 from_mpfr(mpfr_srcptr x, mpfr_rnd_t rnd) {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(x) + 8);
    mpfr_mul_2si(t, x, FRAC, MPFR_RNDN);  // exact, scaling by power of two
    Int z;
    mpfr_get_z(z.get_mpz_t(), t, rnd);
    mpfr_clear(t);
    return from_scaled_int(z);
  }

  static Fixed192 from_scaled_int(const Int& raw) {
    Int bound = Int(1) << 190;
    if (raw >= bound || raw <= -bound) throw BudgetError("fixed-point overflow");
    Int m = raw;
    if (m < 0) m += Int(1) << 192;
    Fixed192 r = zero();
    Int limb = m & Int(0xffffffffffffffffUL);
    r.w[0] = limb.get_ui();
    m >>= 64;
    limb = m & Int(0xffffffffffffffffUL);
    r.w[1] = limb.get_ui();
    m >>= 64;
    r.w[2] = m.get_ui();
    return r;
  }

  static Fixed192 from_int(int64_t v) {
    return from_scaled_int(Int(static_cast<long>(v)) << FRAC);
  }

  // Downward-rounded value; true value lies in [result, result + k*ulp) with
  // k bounded by the number of interval-width ulps plus one.
  static Fixed192 from_field_lo(const FieldReal& v) {
    return from_mpfr(v.enclose(224).lo(), MPFR_RNDD);
  }
  static Fixed192 from_field_hi(const FieldReal& v) {
    return from_mpfr(v.enclose(224).hi(), MPFR_RNDU);
  }

  bool negative() const { return w[2] >> 63; }

  Fixed192 operator+(const Fixed192& o) const {
    Fixed192 r;
    unsigned __int128 c = 0;
    for (int i = 0; i < 3; ++i) {
      c += (unsigned __int128)w[i] + o.w[i];
      r.w[i] = (uint64_t)c;
      c >>= 64;
    }
    return r;
  }

  Fixed192 operator-() const {
    Fixed192 r;
    unsigned __int128 c = 1;
    for (int i = 0; i < 3; ++i) {
      c += (unsigned __int128)(~w[i]);
      r.w[i] = (uint64_t)c;
      c >>= 64;
    }
    return r;
  }

  Fixed192 operator-(const Fixed192& o) const { return *this + (-o); }

  // Shift by a few raw ulps, used for certified comparison margins.
  Fixed192 nudged(int64_t ulps) const {
    Fixed192 d = zero();
    if (ulps >= 0) {
      d.w[0] = (uint64_t)ulps;
      return *this + d;
    }
    d.w[0] = (uint64_t)(-ulps);
    return *this - d;
  }

  std::strong_ordering operator<=>(const Fixed192& o) const {
    uint64_t a2 = w[2] ^ (1ULL << 63), b2 = o.w[2] ^ (1ULL << 63);
    if (a2 != b2) return a2 <=> b2;
    if (w[1] != o.w[1]) return w[1] <=> o.w[1];
    return w[0] <=> o.w[0];
  }
  bool operator==(const Fixed192& o) const {
    return w[0] == o.w[0] && w[1] == o.w[1] && w[2] == o.w[2];
  }

  // floor of the represented value (arithmetic shift, w[0] is all fraction)
  int64_t floor_int() const {
    __int128 top = ((__int128)(int64_t)w[2] << 64) | (__int128)w[1];
    __int128 f = top >> (FRAC - 64);
    if (f > INT64_MAX || f < INT64_MIN) throw BudgetError("fixed-point floor overflow");
    return (int64_t)f;
  }

  double to_double() const {
    bool neg = negative();
    Fixed192 a = neg ? -*this : *this;
    double d = std::ldexp((double)a.w[2], 128 - FRAC) +
               std::ldexp((double)a.w[1], 64 - FRAC) + std::ldexp((double)a.w[0], -FRAC);
    return neg ? -d : d;
  }
};

using FixSum = Fixed192<128>;    // solver partial sums
using FixMeasure = Fixed192<160>;  // density endpoints and measures

}  // namespace cubeshift
