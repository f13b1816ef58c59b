#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cubeshift/reduction.hpp"

namespace cubeshift {

void QuadraticPolynomial::validate() const {
  int nn = n();
  if (nn < 1) throw SpecError("quadratic needs at least one variable");
  if ((int)a.size() != nn) throw SpecError("homogeneous part has wrong dimension");
  for (auto& row : a)
    if ((int)row.size() != nn) throw SpecError("homogeneous part is not square");
  for (int i = 0; i < nn; ++i)
    for (int j = i + 1; j < nn; ++j)
      if (!(a[i][j] == a[j][i])) throw SpecError("homogeneous part is not symmetric");
  if (!nc_cert.empty() && (int)nc_cert.size() != nn * (nn + 1) / 2 + nn)
    throw SpecError("certification mask has wrong length");
}

bool QuadraticPolynomial::diagonal() const {
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      if (i != j && !a[i][j].is_zero()) return false;
  return true;
}

FieldReal QuadraticPolynomial::eval(const std::vector<FieldReal>& y) const {
  if ((int)y.size() != n()) throw SpecError("evaluation point has wrong dimension");
  FieldReal acc = c0;
  for (int i = 0; i < n(); ++i) {
    FieldReal row = b[i];
    for (int j = 0; j < n(); ++j) row += a[i][j] * y[j];
    acc += row * y[i];
  }
  return acc;
}

FieldReal QuadraticPolynomial::eval_int(const std::vector<int64_t>& y) const {
  std::vector<FieldReal> fy(y.size());
  for (size_t i = 0; i < y.size(); ++i) fy[i] = FieldReal(Rat(Int((long)y[i])));
  return eval(fy);
}

std::vector<std::pair<FieldReal, bool>> QuadraticPolynomial::nonconstant_coeffs() const {
  std::vector<std::pair<FieldReal, bool>> out;
  size_t k = 0;
  auto cert = [&]() { return nc_cert.empty() ? true : nc_cert[k] != 0; };
  for (int i = 0; i < n(); ++i)
    for (int j = i; j < n(); ++j) {
      out.emplace_back(a[i][j], cert());
      ++k;
    }
  for (int i = 0; i < n(); ++i) {
    out.emplace_back(b[i], cert());
    ++k;
  }
  return out;
}

SixCubeReduction reduce_six_cubes(const ShiftedCubeForm& f, int a) {
  if (f.s() != 6) throw SpecError("reduction needs exactly six shifts");
  if (a != 3 && a != 4) throw SpecError("reduction offset a must be 3 or 4");
  std::array<FieldReal, 6> mu;
  for (int i = 0; i < 6; ++i) {
    mu[i] = f.shifts[i].exact();
    if (mu[i].sign() <= 0 || (mu[i] - FieldReal(Rat(1))).sign() > 0)
      throw SpecError("reduction needs normalized shifts 0 < mu <= 1");
  }
  SixCubeReduction r;
  r.a = a;
  FieldReal am1 = FieldReal(Rat(a)) - mu[0];  // a - mu_1
  r.c[0] = am1 - mu[3];
  r.c[1] = am1.square() - mu[3].square();
  r.c[2] = -mu[1] - mu[4];
  r.c[3] = mu[1].square() - mu[4].square();
  r.c[4] = -mu[2] - mu[5];
  r.c[5] = mu[2].square() - mu[5].square();
  r.f_a = am1.cube() - mu[1].cube() - mu[2].cube() - mu[3].cube() - mu[4].cube() - mu[5].cube();
  bool dec14 = f.shifts[0].is_decimal() || f.shifts[3].is_decimal();
  bool dec25 = f.shifts[1].is_decimal() || f.shifts[4].is_decimal();
  bool dec36 = f.shifts[2].is_decimal() || f.shifts[5].is_decimal();
  r.c_certified = {!dec14, !dec14, !dec25, !dec25, !dec36, !dec36};

  QuadraticPolynomial& q = r.quadratic;
  q.a.assign(3, std::vector<FieldReal>(3));
  q.b.resize(3);
  Rat three(3);
  for (int i = 0; i < 3; ++i) {
    q.a[i][i] = r.c[2 * i].scaled(three);
    q.b[i] = r.c[2 * i + 1].scaled(three);
  }
  q.c0 = r.f_a;
  // mask order: a00 a01 a02 a11 a12 a22 b0 b1 b2; off-diagonal zeros are exact
  q.nc_cert = {r.c_certified[0], 1, 1, r.c_certified[2], 1, r.c_certified[4],
               r.c_certified[1], r.c_certified[3], r.c_certified[5]};
  return r;
}

std::vector<int64_t> substituted_point(int a, const std::array<int64_t, 3>& y) {
  return {a + y[0], y[1], y[2], -y[0], -y[1], -y[2]};
}

SquareCompletion complete_square(const QuadraticPolynomial& q) {
  q.validate();
  int n = q.n();
  // solve 2A xi = b by exact elimination; pivots certified nonzero via sign()
  std::vector<std::vector<FieldReal>> m(n, std::vector<FieldReal>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = q.a[i][j].scaled(Rat(2));
    m[i][n] = q.b[i];
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (m[row][col].sign() != 0) {
        piv = row;
        break;
      }
    if (piv < 0) throw SpecError("homogeneous part is singular");
    std::swap(m[col], m[piv]);
    FieldReal inv = m[col][col].inverse();
    for (int j = col; j <= n; ++j) m[col][j] *= inv;
    for (int row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      FieldReal factor = m[row][col];
      for (int j = col; j <= n; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  SquareCompletion out;
  out.xi.resize(n);
  for (int i = 0; i < n; ++i) out.xi[i] = m[i][n];

  auto homog = [&](const std::vector<FieldReal>& z) {
    FieldReal acc;
    for (int i = 0; i < n; ++i) {
      FieldReal row;
      for (int j = 0; j < n; ++j) row += q.a[i][j] * z[j];
      acc += row * z[i];
    }
    return acc;
  };
  out.constant = homog(out.xi) - q.c0;

  // spot-verify Q(y + xi) = q(y) + constant on random integer points
  std::mt19937 rng(7);
  std::uniform_int_distribution<int64_t> pick(-9, 9);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int64_t> y(n);
    std::vector<FieldReal> shifted(n);
    for (int i = 0; i < n; ++i) {
      y[i] = pick(rng);
      shifted[i] = FieldReal(Rat((long)y[i])) + out.xi[i];
    }
    if (!(homog(shifted) == q.eval_int(y) + out.constant))
      throw PrecisionError("square completion self-check failed");
  }
  return out;
}

std::string verdict_name(Ternary t) {
  switch (t) {
    case Ternary::True: return "holds";
    case Ternary::False: return "fails";
    default: return "unknown";
  }
}

namespace {

enum class PairKind { Rational, Irrational, Unknown, NoPair };

// ratio num/den of two raw coefficient specs, at the declaration level:
// exact for rational/surd data, decidable for a declared-irrational decimal
// against a nonzero rational, otherwise unknown
PairKind spec_ratio_kind(const RealSpec& num, const RealSpec& den) {
  bool nd = num.is_decimal(), dd = den.is_decimal();
  if (!nd && !dd) {
    FieldReal d = den.exact();
    if (d.is_zero()) return PairKind::NoPair;
    return num.exact().div(d).is_rational() ? PairKind::Rational : PairKind::Irrational;
  }
  if (!nd && num.exact().is_zero()) {
    // 0 over a certified-nonzero denominator is rational
    if ((dd && den.declared_irrational()) || (!dd && !den.exact().is_zero()))
      return PairKind::Rational;
    return PairKind::Unknown;
  }
  if (nd && dd)
    return num.to_string() == den.to_string() && num.declared_irrational() ? PairKind::Rational
                                                                           : PairKind::Unknown;
  if (nd && num.declared_irrational() && den.is_rational() && !den.exact().is_zero())
    return PairKind::Irrational;
  if (dd && den.declared_irrational() && num.is_rational()) return PairKind::Irrational;
  return PairKind::Unknown;
}

Ternary combine_pairs(const std::vector<PairKind>& kinds) {
  bool unknown = false;
  for (PairKind k : kinds) {
    if (k == PairKind::Irrational) return Ternary::True;
    if (k == PairKind::Unknown) unknown = true;
  }
  // no valid pair at all means identically rational data: fails
  return unknown ? Ternary::Undecidable : Ternary::False;
}

}  // namespace

Ternary check_irrationality_pair(const CubicSystem& sys) {
  if (sys.s() < 1) throw SpecError("empty cubic system");
  std::vector<RealSpec> coeffs;
  for (auto& h : sys.polys) {
    h.validate();
    coeffs.push_back(h.b3);
    coeffs.push_back(h.b2);
    coeffs.push_back(h.b1);
  }
  std::vector<PairKind> kinds;
  for (size_t i = 0; i < coeffs.size(); ++i)
    for (size_t j = 0; j < coeffs.size(); ++j)
      if (i != j) kinds.push_back(spec_ratio_kind(coeffs[i], coeffs[j]));
  return combine_pairs(kinds);
}

Ternary check_irrationality_poly(const QuadraticPolynomial& q) {
  q.validate();
  auto coeffs = q.nonconstant_coeffs();
  std::vector<PairKind> kinds;
  for (auto& [dv, dc] : coeffs) {
    if (!dc || dv.is_zero()) continue;  // denominator must be certified nonzero
    for (auto& [nv, ncert] : coeffs) {
      if (&nv == &dv) continue;
      if (ncert)
        kinds.push_back(nv.div(dv).is_rational() ? PairKind::Rational : PairKind::Irrational);
      else
        kinds.push_back(PairKind::Unknown);
    }
  }
  // uncertified denominators: any pair through them stays undecided
  bool uncert_den = false;
  for (auto& vc : coeffs)
    if (!vc.second) uncert_den = true;
  Ternary t = combine_pairs(kinds);
  if (t == Ternary::False && uncert_den) return Ternary::Undecidable;
  return t;
}

ReductionChoice choose_reduction(const ShiftedCubeForm& f) {
  if (f.s() != 6) throw SpecError("reduction needs exactly six shifts");
  const RealSpec& mu1 = f.shifts[0];
  bool surd_irr = mu1.is_surd() && !mu1.exact().is_rational();
  bool declared = mu1.is_decimal() && mu1.declared_irrational();
  if (!surd_irr && !declared)
    throw SpecError("the dichotomy needs mu_1 certified irrational");

  SixCubeReduction r3 = reduce_six_cubes(f, 3);
  Ternary v3 = check_irrationality_poly(r3.quadratic);
  if (v3 == Ternary::True) return {Ternary::True, {std::move(r3)}};
  SixCubeReduction r4 = reduce_six_cubes(f, 4);
  Ternary v4 = check_irrationality_poly(r4.quadratic);
  if (v4 == Ternary::True) return {Ternary::True, {std::move(r4)}};
  if (v3 == Ternary::False && v4 == Ternary::False)
    throw PrecisionError("reduction dichotomy violated for certified-irrational mu_1");
  return {Ternary::Undecidable, {std::move(r3), std::move(r4)}};
}

DenseSearchResult quadratic_dense_search(const QuadraticPolynomial& q, const RealSpec& target,
                                         const RealSpec& eta, int64_t radius) {
  q.validate();
  int n = q.n();
  if (n > 4) throw SpecError("dense search supports at most four variables");
  if (radius < 1) throw SpecError("dense search radius must be positive");
  if (radius > 1000) throw SpecError("dense search radius is capped at 1000 per coordinate");
  double points = std::pow(2.0 * (double)radius + 1.0, n);
  if (points > 1.2e9) throw BudgetError("dense search enumeration budget exceeded");
  FieldReal tgt = target.exact();
  FieldReal et = eta.exact();
  if (et.sign() <= 0) throw SpecError("dense search eta must be positive");

  // double-precision screen: only near-minimal points pay for exact arithmetic
  std::vector<std::vector<double>> ad(n, std::vector<double>(n));
  std::vector<double> bd(n);
  double scale = std::fabs(q.c0.to_double()) + std::fabs(tgt.to_double());
  double r2 = (double)radius * (double)radius;
  for (int i = 0; i < n; ++i) {
    bd[i] = q.b[i].to_double();
    scale += std::fabs(bd[i]) * (double)radius;
    for (int j = 0; j < n; ++j) {
      ad[i][j] = q.a[i][j].to_double();
      scale += std::fabs(ad[i][j]) * r2;
    }
  }
  double slack = 1e-9 * scale + 1e-300;
  double base = q.c0.to_double() - tgt.to_double();

  bool diag = q.diagonal();
  std::vector<std::vector<double>> tab;
  if (diag) {
    tab.assign(n, std::vector<double>(2 * radius + 1));
    for (int i = 0; i < n; ++i)
      for (int64_t y = -radius; y <= radius; ++y)
        tab[i][y + radius] = ad[i][i] * (double)y * (double)y + bd[i] * (double)y;
  }
  std::vector<int64_t> y(n, 0);
  auto dev_dbl = [&]() {
    double v = base;
    if (diag) {
      for (int i = 0; i < n; ++i) v += tab[i][y[i] + radius];
    } else {
      for (int i = 0; i < n; ++i) {
        double row = bd[i];
        for (int j = 0; j < n; ++j) row += ad[i][j] * (double)y[j];
        v += row * (double)y[i];
      }
    }
    return std::fabs(v);
  };

  DenseSearchResult out;
  double best_dbl = std::numeric_limits<double>::infinity();
  FieldReal best_exact;
  bool have = false, exact_zero = false;

  auto consider = [&]() {
    ++out.visited;
    double d = dev_dbl();
    if (have && d > best_dbl + slack) return;
    FieldReal dv = (q.eval_int(y) - tgt).abs();
    if (!have || dv.cmp(best_exact) < 0) {
      have = true;
      best_exact = dv;
      best_dbl = d;
      out.witness = y;
      if (dv.is_zero()) exact_zero = true;
    }
  };

  // shells of constant max-norm, lexicographic inside each shell: the first
  // strict improvement is automatically minimal in (deviation, norm, lex)
  for (int64_t m = 0; m <= radius && !exact_zero; ++m) {
    auto shell = [&](auto&& self, int d, bool touched) -> void {
      if (exact_zero) return;
      if (d == n) {
        if (touched) consider();
        return;
      }
      if (d == n - 1 && !touched) {
        y[d] = -m;
        consider();
        if (m > 0 && !exact_zero) {
          y[d] = m;
          consider();
        }
        return;
      }
      for (int64_t v = -m; v <= m && !exact_zero; ++v) {
        y[d] = v;
        self(self, d + 1, touched || std::llabs(v) == m);
      }
    };
    shell(shell, 0, false);
  }
  out.value = q.eval_int(out.witness);
  out.deviation = best_exact;
  out.achieved = best_exact.cmp(et) < 0;
  return out;
}

}  // namespace cubeshift
