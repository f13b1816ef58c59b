#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubeshift/interval.hpp"
#include "cubeshift/numeric.hpp"

namespace cubeshift {

// Exact element of Q(sqrt(m1), ..., sqrt(mk)): a rational plus a finite sum
// of rational multiples of sqrt(m) over squarefree m >= 2. Closed under the
// ring operations because sqrt(m)*sqrt(m') = g*sqrt(mm'/g^2) with g = gcd.
// Linear independence of {sqrt(m) : m squarefree} over Q makes the zero test
// syntactic and sign() exactly decidable via a conjugate-product lower bound.
class FieldReal {
 public:
  FieldReal() : r_(0) {}
  FieldReal(const Rat& q) : r_(q) {}  // NOLINT: implicit by design
  FieldReal(long v) : r_(v) {}        // NOLINT

  // coeff * sqrt(d); d >= 1 arbitrary, canonicalized to squarefree.
  static FieldReal surd(const Rat& coeff, unsigned long d);

  friend FieldReal operator+(const FieldReal& a, const FieldReal& b);
  friend FieldReal operator-(const FieldReal& a, const FieldReal& b);
  friend FieldReal operator*(const FieldReal& a, const FieldReal& b);
  FieldReal operator-() const;
  FieldReal& operator+=(const FieldReal& o) { return *this = *this + o; }
  FieldReal& operator-=(const FieldReal& o) { return *this = *this - o; }
  FieldReal& operator*=(const FieldReal& o) { return *this = *this * o; }

  FieldReal square() const { return *this * *this; }
  FieldReal cube() const { return *this * *this * *this; }
  FieldReal scaled(const Rat& q) const;  // cheap rational rescale

  bool is_zero() const { return s_.empty() && r_ == 0; }
  bool is_rational() const { return s_.empty(); }
  const Rat& rational_part() const { return r_; }
  Rat as_rational() const;  // throws unless is_rational()

  int sign() const;  // exact; always terminates
  int cmp(const FieldReal& o) const { return (*this - o).sign(); }
  FieldReal abs() const { return sign() >= 0 ? *this : -*this; }
  bool operator==(const FieldReal& o) const { return (*this - o).is_zero(); }

  FieldReal inverse() const;  // throws SpecError on zero
  FieldReal div(const FieldReal& o) const { return *this * o.inverse(); }

  Int floor() const;  // exact
  Interval enclose(mpfr_prec_t prec) const;
  double to_double() const;
  std::string decimal(int digits) const { return enclose(64 + 4 * digits).decimal(digits); }
  std::string str() const;  // debug form, e.g. "3/2 + 5*sqrt(2)"

  const std::map<unsigned long, Rat>& surd_terms() const { return s_; }

 private:
  void prune();
  Rat r_;
  std::map<unsigned long, Rat> s_;
};

// Squarefree decomposition d = f^2 * m; returns (f, m). Throws SpecError when
// d is too large to certify squarefreeness by trial division.
std::pair<unsigned long, unsigned long> squarefree_split(unsigned long d);

}  // namespace cubeshift
