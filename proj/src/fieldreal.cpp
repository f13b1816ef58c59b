#include "cubeshift/fieldreal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace cubeshift {

std::pair<unsigned long, unsigned long> squarefree_split(unsigned long d) {
  if (d == 0) throw SpecError("surd radicand must be positive");
  unsigned long f = 1, m = 1, rest = d;
  for (unsigned long p = 2; p * p <= rest && p < 100000; p += (p == 2 ? 1 : 2)) {
    if (rest % p) continue;
    int e = 0;
    while (rest % p == 0) rest /= p, ++e;
    for (int i = 0; i < e / 2; ++i) f *= p;
    if (e & 1) m *= p;
  }
  if (rest > 1) {
    // Remaining cofactor has no prime factor < 1e5. It is squarefree unless a
    // perfect square; a p^2*q shape would exceed what we ever feed in.
    unsigned long r = static_cast<unsigned long>(std::sqrt((double)rest));
    while (r * r > rest) --r;
    while ((r + 1) * (r + 1) <= rest) ++r;
    if (r * r == rest)
      f *= r;
    else if (rest > 10000000000UL)
      throw SpecError("surd radicand too large to canonicalize");
    else
      m *= rest;
  }
  return {f, m};
}

void FieldReal::prune() {
  for (auto it = s_.begin(); it != s_.end();)
    it = (it->second == 0) ? s_.erase(it) : std::next(it);
}

FieldReal FieldReal::surd(const Rat& coeff, unsigned long d) {
  auto [f, m] = squarefree_split(d);
  FieldReal r;
  Rat c = coeff * Rat(f);
  if (m == 1)
    r.r_ = c;
  else if (c != 0)
    r.s_[m] = c;
  return r;
}

FieldReal operator+(const FieldReal& a, const FieldReal& b) {
  FieldReal r = a;
  r.r_ += b.r_;
  for (auto& [m, c] : b.s_) r.s_[m] += c;
  r.prune();
  return r;
}

FieldReal operator-(const FieldReal& a, const FieldReal& b) {
  FieldReal r = a;
  r.r_ -= b.r_;
  for (auto& [m, c] : b.s_) r.s_[m] -= c;
  r.prune();
  return r;
}

FieldReal FieldReal::operator-() const {
  FieldReal r;
  r.r_ = -r_;
  for (auto& [m, c] : s_) r.s_[m] = -c;
  return r;
}

FieldReal FieldReal::scaled(const Rat& q) const {
  FieldReal r;
  if (q == 0) return r;
  r.r_ = r_ * q;
  for (auto& [m, c] : s_) r.s_[m] = c * q;
  return r;
}

FieldReal operator*(const FieldReal& a, const FieldReal& b) {
  FieldReal r;
  r.r_ = a.r_ * b.r_;
  for (auto& [m, c] : b.s_)
    if (a.r_ != 0) r.s_[m] += a.r_ * c;
  for (auto& [m, c] : a.s_)
    if (b.r_ != 0) r.s_[m] += c * b.r_;
  for (auto& [m1, c1] : a.s_)
    for (auto& [m2, c2] : b.s_) {
      unsigned long g = std::gcd(m1, m2);
      unsigned long m = (m1 / g) * (m2 / g);
      Rat c = c1 * c2 * Rat(g);
      if (m == 1)
        r.r_ += c;
      else
        r.s_[m] += c;
    }
  r.prune();
  return r;
}

Rat FieldReal::as_rational() const {
  if (!is_rational()) throw SpecError("value is not rational");
  return r_;
}

Interval FieldReal::enclose(mpfr_prec_t prec) const {
  Interval acc = Interval::from_rat(r_, prec);
  for (auto& [m, c] : s_)
    acc = acc.add(Interval::from_rat(c, prec).mul(Interval::sqrt_ui(m, prec)));
  return acc;
}

double FieldReal::to_double() const { return enclose(96).mid_d(); }

namespace {

// All prime radicands appearing across the surd keys; conjugations flip signs
// independently on these.
std::vector<unsigned long> prime_support(const std::map<unsigned long, Rat>& s) {
  std::set<unsigned long> ps;
  for (auto& [m, c] : s) {
    unsigned long rest = m;
    for (unsigned long p = 2; p * p <= rest; p += (p == 2 ? 1 : 2))
      while (rest % p == 0) {
        ps.insert(p);
        rest /= p;
      }
    if (rest > 1) ps.insert(rest);
  }
  return {ps.begin(), ps.end()};
}

}  // namespace

int FieldReal::sign() const {
  if (s_.empty()) return sgn(r_);
  for (mpfr_prec_t p : {mpfr_prec_t(128), mpfr_prec_t(256)}) {
    int s = enclose(p).sign();
    if (s != Interval::kAmbiguous) return s;
  }
  // Certified escalation: |v| >= |N| / max_conj^(2^k - 1) where N is the
  // rational norm over all conjugates and max_conj bounds each conjugate.
  auto primes = prime_support(s_);
  size_t k = primes.size();
  FieldReal norm(Rat(1));
  for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
    FieldReal conj;
    conj.r_ = r_;
    for (auto& [m, c] : s_) {
      int flips = 0;
      for (size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1 && m % primes[i] == 0) ++flips;
      conj.s_[m] = (flips & 1) ? Rat(-c) : c;
    }
    conj.prune();
    norm *= conj;
  }
  if (!norm.is_rational() || norm.r_ == 0)
    throw PrecisionError("conjugate norm failed to certify sign");
  // Upper bound on any conjugate: |r| + sum |c| sqrt(m) <= |r| + sum |c|(m+1).
  Rat bound = ::abs(r_);
  for (auto& [m, c] : s_) bound += ::abs(c) * Rat(m + 1);
  double logv = (mpz_sizeinbase(bound.get_num().get_mpz_t(), 2) + 1.0) -
                (mpz_sizeinbase(bound.get_den().get_mpz_t(), 2) - 1.0);
  double logn = (mpz_sizeinbase(norm.r_.get_den().get_mpz_t(), 2) + 1.0) +
                1.0 - (mpz_sizeinbase(norm.r_.get_num().get_mpz_t(), 2) - 1.0);
  double need = logn + logv * double((size_t(1) << k) - 1) + 64;
  mpfr_prec_t p = static_cast<mpfr_prec_t>(std::max(256.0, need));
  int s = enclose(p).sign();
  if (s == Interval::kAmbiguous)
    throw PrecisionError("sign undecidable past certified precision");
  return s;
}

FieldReal FieldReal::inverse() const {
  if (is_zero()) throw SpecError("division by zero");
  if (is_rational()) return FieldReal(Rat(1) / r_);
  auto primes = prime_support(s_);
  size_t k = primes.size();
  FieldReal prod(Rat(1));
  for (size_t mask = 1; mask < (size_t(1) << k); ++mask) {
    FieldReal conj;
    conj.r_ = r_;
    for (auto& [m, c] : s_) {
      int flips = 0;
      for (size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1 && m % primes[i] == 0) ++flips;
      conj.s_[m] = (flips & 1) ? Rat(-c) : c;
    }
    conj.prune();
    prod *= conj;
  }
  FieldReal den = *this * prod;  // full norm, rational by Galois symmetry
  if (!den.is_rational() || den.r_ == 0)
    throw PrecisionError("norm degenerated in inverse()");
  return prod.scaled(Rat(1) / den.r_);
}

Int FieldReal::floor() const {
  if (is_rational()) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r_.get_num().get_mpz_t(), r_.get_den().get_mpz_t());
    return q;
  }
  Interval e = enclose(160);
  double guess = std::floor(e.mid_d());
  Int k(guess);
  // Adjust with exact comparisons until k <= v < k+1.
  while ((*this - FieldReal(Rat(k))).sign() < 0) --k;
  while ((*this - FieldReal(Rat(k + 1))).sign() >= 0) ++k;
  return k;
}

std::string FieldReal::str() const {
  std::ostringstream os;
  os << r_.get_str();
  for (auto& [m, c] : s_) os << " + " << c.get_str() << "*sqrt(" << m << ")";
  return os.str();
}

}  // namespace cubeshift
