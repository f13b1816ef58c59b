#include "cubeshift/solver.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "cubeshift/util.hpp"

namespace cubeshift {

namespace {

std::vector<TermTable> form_tables(const ShiftedCubeForm& f, const SearchBox& box) {
  if ((int)box.ranges.size() != f.s()) throw SpecError("box/form dimension mismatch");
  if (box.cardinality() > 2'000'000'000ULL) throw BudgetError("search box too large");
  std::vector<TermTable> tabs;
  for (int i = 0; i < f.s(); ++i) {
    f.shifts[i].validate_for_eval();
    FieldReal mu = f.shifts[i].exact();
    tabs.push_back(make_term_table(box.ranges[i].first, box.ranges[i].second,
                                   [mu](int64_t x) {
                                     return (FieldReal(Rat((long)x)) - mu).cube();
                                   }));
  }
  return tabs;
}

std::vector<TermTable> system_tables(const CubicSystem& h, const SearchBox& box) {
  if ((int)box.ranges.size() != h.s()) throw SpecError("box/system dimension mismatch");
  if (box.cardinality() > 2'000'000'000ULL) throw BudgetError("search box too large");
  std::vector<TermTable> tabs;
  for (int i = 0; i < h.s(); ++i) {
    h.polys[i].validate_for_eval();
    CubicPolynomial p = h.polys[i];
    tabs.push_back(make_term_table(box.ranges[i].first, box.ranges[i].second,
                                   [p](int64_t x) { return p.eval_int(x); }));
  }
  return tabs;
}

}  // namespace

std::vector<SolutionRecord> brute_force_solve(const ShiftedCubeForm& f, const Window& w,
                                              const SearchBox& box) {
  EnumOptions opt;
  opt.emit = true;
  return brute_force_enumerate(form_tables(f, box), w, opt).solutions;
}

std::vector<SolutionRecord> brute_force_solve(const CubicSystem& h, const Window& w,
                                              const SearchBox& box) {
  EnumOptions opt;
  opt.emit = true;
  return brute_force_enumerate(system_tables(h, box), w, opt).solutions;
}

EnumResult mitm_solve(const ShiftedCubeForm& f, const Window& w, const SearchBox& box,
                      bool emit_solutions) {
  EnumOptions opt;
  opt.emit = emit_solutions;
  return mitm_enumerate(form_tables(f, box), w, opt);
}

EnumResult mitm_solve(const CubicSystem& h, const Window& w, const SearchBox& box,
                      bool emit_solutions) {
  EnumOptions opt;
  opt.emit = emit_solutions;
  return mitm_enumerate(system_tables(h, box), w, opt);
}

uint64_t count_window(const ShiftedCubeForm& f, const Window& w) {
  SearchBox box = default_box(f, w);
  return mitm_solve(f, w, box, false).count;
}

double asymptotic_main_term(int s, double eta, double tau) {
  if (s < 1 || eta <= 0 || tau <= 0) throw SpecError("main term needs s>=1, eta>0, tau>0");
  mpfr_t g43, gs3, t, r;
  mpfr_inits2(192, g43, gs3, t, r, (mpfr_ptr)nullptr);
  mpfr_set_ui(t, 4, MPFR_RNDN);
  mpfr_div_ui(t, t, 3, MPFR_RNDN);
  mpfr_gamma(g43, t, MPFR_RNDN);
  mpfr_pow_ui(g43, g43, (unsigned long)s, MPFR_RNDN);
  mpfr_set_ui(t, (unsigned long)s, MPFR_RNDN);
  mpfr_div_ui(t, t, 3, MPFR_RNDN);
  mpfr_gamma(gs3, t, MPFR_RNDN);
  mpfr_set_si(t, (long)s - 3, MPFR_RNDN);
  mpfr_div_ui(t, t, 3, MPFR_RNDN);  // exponent s/3 - 1, exactly
  mpfr_set_d(r, tau, MPFR_RNDN);
  mpfr_pow(r, r, t, MPFR_RNDN);
  mpfr_mul(r, r, g43, MPFR_RNDN);
  mpfr_div(r, r, gs3, MPFR_RNDN);
  mpfr_mul_d(r, r, 2.0 * eta, MPFR_RNDN);
  double out = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clears(g43, gs3, t, r, (mpfr_ptr)nullptr);
  return out;
}

namespace {

// Largest integer x >= 0 with x^den <= scale^den * P^num; exact rational
// comparisons, so P = k^6 and friends land on the right side of the boundary.
int64_t floor_scaled_root(double P, int num, int den, long scale) {
  Rat bound = 1;
  Rat p = rat_of_double(P);
  for (int i = 0; i < num; ++i) bound *= p;
  for (int i = 0; i < den; ++i) bound *= Rat(scale);
  int64_t x = (int64_t)std::floor((double)scale * std::pow(P, (double)num / den));
  if (x < 0) x = 0;
  auto le = [&](int64_t v) {
    Rat vn = 1;
    for (int i = 0; i < den; ++i) vn *= Rat((long)v);
    return vn <= bound;
  };
  while (x > 0 && !le(x)) --x;
  while (le(x + 1)) ++x;
  return x;
}

MomentCount count_moment(const std::function<FieldReal(int64_t)>& f1,
                         const std::function<FieldReal(int64_t)>& f2,
                         const MomentRanges& mr, const Rat& eta) {
  // Pair tables: entries are (x, y) with value f(x) - f(y); the window is
  // |D1 + D2| < eta around tau = 0.
  auto pair_table = [](std::pair<int64_t, int64_t> r,
                       const std::function<FieldReal(int64_t)>& f) {
    TermTable t;
    int64_t lo = r.first, n = r.second - r.first;
    if (n <= 0) throw SpecError("empty moment range");
    std::vector<FieldReal> cache((size_t)n);
    for (int64_t i = 0; i < n; ++i) cache[(size_t)i] = f(lo + 1 + i);
    t.vals.reserve((size_t)(n * n));
    for (int64_t ix = 0; ix < n; ++ix)
      for (int64_t iy = 0; iy < n; ++iy)
        t.vals.push_back(FixSum::from_field_lo(cache[(size_t)ix] - cache[(size_t)iy]));
    t.exact = [cache, n](size_t i) {
      return cache[i / (size_t)n] - cache[i % (size_t)n];
    };
    t.decode = [lo, n](size_t i, std::vector<int64_t>& out) {
      out.push_back(lo + 1 + (int64_t)(i / (size_t)n));
      out.push_back(lo + 1 + (int64_t)(i % (size_t)n));
    };
    t.coords = 2;
    return t;
  };
  std::vector<TermTable> tabs;
  tabs.push_back(pair_table(mr.primary, f1));
  tabs.push_back(pair_table(mr.secondary, f2));
  Window w(RealSpec::from_rat(Rat(0)), RealSpec::from_rat(eta));
  EnumOptions opt;
  MomentCount out;
  out.ranges = mr;
  out.count = mitm_enumerate(tabs, w, opt).count;
  out.diagonal = (uint64_t)(mr.primary.second - mr.primary.first) *
                 (uint64_t)(mr.secondary.second - mr.secondary.first);
  return out;
}

}  // namespace

MomentRanges MomentRanges::shifted(double P) {
  if (P < 2) throw SpecError("moment ranges need P >= 2");
  MomentRanges mr;
  mr.P = P;
  mr.primary = {floor_scaled_root(P, 1, 1, 1), floor_scaled_root(P, 1, 1, 2)};
  mr.secondary = {floor_scaled_root(P, 5, 6, 1), floor_scaled_root(P, 5, 6, 2)};
  mr.exp_num = 5;
  mr.exp_den = 6;
  return mr;
}

MomentRanges MomentRanges::general(double P, double c) {
  if (P < 2 || c <= 1) throw SpecError("moment ranges need P >= 2 and c > 1");
  MomentRanges mr;
  mr.P = P;
  // primary upper bound floor(c*P), computed on the exact rational product
  Rat cp = rat_of_double(c) * rat_of_double(P);
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), cp.get_num().get_mpz_t(), cp.get_den().get_mpz_t());
  mr.primary = {floor_scaled_root(P, 1, 1, 1), to_i64(fl)};
  mr.secondary = {floor_scaled_root(P, 4, 5, 1), floor_scaled_root(P, 4, 5, 2)};
  mr.exp_num = 4;
  mr.exp_den = 5;
  return mr;
}

MomentCount count_S4_shifted(const RealSpec& mu1, const RealSpec& mu2, double P,
                             const Rat& eta) {
  mu1.validate_for_eval();
  mu2.validate_for_eval();
  FieldReal m1 = mu1.exact(), m2 = mu2.exact();
  return count_moment(
      [m1](int64_t x) { return (FieldReal(Rat((long)x)) - m1).cube(); },
      [m2](int64_t x) { return (FieldReal(Rat((long)x)) - m2).cube(); },
      MomentRanges::shifted(P), eta);
}

MomentCount count_S4_general(const CubicPolynomial& h1, const CubicPolynomial& h2, double c,
                             double P, const Rat& eta) {
  h1.validate_for_eval();
  h2.validate_for_eval();
  return count_moment([h1](int64_t x) { return h1.eval_int(x); },
                      [h2](int64_t x) { return h2.eval_int(x); },
                      MomentRanges::general(P, c), eta);
}

bool diagonal_only_check(const CubicPolynomial& h, double P, const Rat& eta) {
  h.validate_for_eval();
  if (h.b3.exact().sign() <= 0)
    throw SpecError("diagonal check expects a positive leading coefficient");
  int64_t lo = floor_scaled_root(P, 1, 1, 1), hi = floor_scaled_root(P, 1, 1, 2);
  if (hi - lo < 1) throw SpecError("empty range in diagonal check");
  // h must be strictly increasing on (P, 2P]: minimize h' = 3 b3 x^2 + 2 b2 x
  // + b1 over [lo+1, hi] exactly (endpoints plus interior vertex).
  FieldReal a3 = h.b3.exact(), a2 = h.b2.exact(), a1 = h.b1.exact();
  auto dh = [&](const FieldReal& x) {
    return a3.scaled(3) * x.square() + a2.scaled(2) * x + a1;
  };
  FieldReal xl(Rat((long)(lo + 1))), xr(Rat((long)hi));
  FieldReal dmin = dh(xl);
  if (dmin.cmp(dh(xr)) > 0) dmin = dh(xr);
  FieldReal vertex = (-a2.scaled(2)).div(a3.scaled(6));  // -2 b2 / (6 b3)
  if (vertex.cmp(xl) > 0 && vertex.cmp(xr) < 0 && dmin.cmp(dh(vertex)) > 0)
    dmin = dh(vertex);
  if (dmin.sign() <= 0)
    throw SpecError("cubic is not strictly increasing on the range");
  // Increasing => sorted values are h(lo+1..hi); gaps must all be >= eta.
  FieldReal e{eta};
  FieldReal prev = h.eval_int(lo + 1);
  for (int64_t x = lo + 2; x <= hi; ++x) {
    FieldReal cur = h.eval_int(x);
    if ((cur - prev).cmp(e) < 0) return false;
    prev = cur;
  }
  return true;
}

}  // namespace cubeshift
