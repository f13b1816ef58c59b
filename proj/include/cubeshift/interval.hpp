#pragma once

#include <mpfr.h>

#include <string>

#include "cubeshift/numeric.hpp"

namespace cubeshift {

// Thin RAII wrapper over mpfr_t so intervals can live in containers.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 96) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] with outward rounding on every operation. The
// usual escalation pattern is: evaluate at 96 bits, retry at double the
// precision while a predicate stays ambiguous, then let the caller's exact
// fallback (or PrecisionError) take over.
class Interval {
 public:
  static constexpr int kAmbiguous = 2;  // sign() result when 0 is interior

  explicit Interval(mpfr_prec_t prec = 96) : lo_(prec), hi_(prec), prec_(prec) {}

  static Interval from_int(long v, mpfr_prec_t prec);
  static Interval from_rat(const Rat& q, mpfr_prec_t prec);
  static Interval sqrt_ui(unsigned long m, mpfr_prec_t prec);
  static Interval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return prec_; }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  Interval add(const Interval& o) const;
  Interval sub(const Interval& o) const;
  Interval mul(const Interval& o) const;
  Interval neg() const;
  Interval abs() const;
  Interval cube() const;  // x^3 is monotone, endpoints map directly

  // -1 / +1 when certain, 0 for the exact zero interval, kAmbiguous otherwise.
  int sign() const;
  bool contains_zero() const;
  double mid_d() const;
  double width_d() const;
  double lo_d() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

  // Midpoint rendered with the given number of significant decimal digits.
  std::string decimal(int digits) const;

 private:
  BigFloat lo_, hi_;
  mpfr_prec_t prec_;
};

}  // namespace cubeshift
