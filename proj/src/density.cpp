#include "cubeshift/density.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "cubeshift/fixed192.hpp"
#include "cubeshift/util.hpp"

namespace cubeshift {

namespace {

// One lattice point's form value as a 160-bit fixed enclosure plus its flat
// box index, so ambiguous merge decisions can be replayed exactly.
struct PointVal {
  FixMeasure lo, hi;
  uint64_t flat;
};

// A maximal run of overlapping windows, tracked by first and last member.
struct Run {
  FixMeasure a_lo, a_hi;  // F of first member
  uint64_t a_flat;
  FixMeasure b_lo, b_hi;  // F of last member
  uint64_t b_flat;
};

struct Sweep {
  std::vector<Run> runs;
  FixMeasure eta_lo, eta_hi;
  double eta_d = 0;
  uint64_t points = 0;
  uint64_t exact_rechecks = 0;
};

std::vector<int64_t> decode_flat(uint64_t flat, const SearchBox& box) {
  std::vector<int64_t> x(box.ranges.size());
  for (int i = (int)box.ranges.size() - 1; i >= 0; --i) {
    uint64_t n = (uint64_t)(box.ranges[i].second - box.ranges[i].first);
    x[i] = box.ranges[i].first + 1 + (int64_t)(flat % n);
    flat /= n;
  }
  return x;
}

// Enumerate all x with window (F-eta, F+eta) possibly meeting [A, B] and
// merge into maximal runs. Merge only when overlap is certain; enclosure
// ties are replayed in exact arithmetic.
Sweep sweep_represented(const ShiftedCubeForm& f, const Rat& a, const Rat& b,
                        const RealSpec& eta) {
  int s = f.s();
  if (s < 1) throw SpecError("form needs at least one variable");
  if (!(a < b)) throw SpecError("range must satisfy A < B");
  eta.validate_for_eval();
  for (auto& m : f.shifts) m.validate_for_eval();
  FieldReal eta_x = eta.exact();
  if (eta_x.sign() <= 0) throw SpecError("eta must be positive");

  Sweep sw;
  sw.eta_lo = FixMeasure::from_field_lo(eta_x);
  sw.eta_hi = FixMeasure::from_field_hi(eta_x);
  sw.eta_d = eta_x.to_double();

  // derived box: all x with (x - mu)^3 <= B + eta per coordinate
  Window wtop{RealSpec::parse(Rat(b).get_str()), eta};
  SearchBox box = default_box(f, wtop);
  uint64_t card = box.cardinality();
  if (card > 100000000ULL) throw BudgetError("enumeration box exceeds 10^8 points");

  // per-coordinate value tables, downward and upward rounded
  std::vector<std::vector<FixMeasure>> vlo(s), vhi(s);
  uint64_t table_bytes = 0;
  for (int i = 0; i < s; ++i) {
    FieldReal mu = f.shifts[i].exact();
    auto [l, h] = box.ranges[i];
    table_bytes += (uint64_t)(h - l) * 2 * sizeof(FixMeasure);
    if (table_bytes > mem_budget_bytes() / 4) throw BudgetError("coordinate tables too large");
    for (int64_t x = l + 1; x <= h; ++x) {
      FieldReal v = (FieldReal(Rat((long)x)) - mu).cube();
      vlo[i].push_back(FixMeasure::from_field_lo(v));
      vhi[i].push_back(FixMeasure::from_field_hi(v));
    }
    if (vlo[i].empty()) return sw;  // empty box: nothing representable
  }

  // suffix extrema for pruning (values are increasing in x)
  std::vector<FixMeasure> sufmin(s + 1, FixMeasure::zero()), sufmax(s + 1, FixMeasure::zero());
  for (int i = s - 1; i >= 0; --i) {
    sufmin[i] = sufmin[i + 1] + vlo[i].front();
    sufmax[i] = sufmax[i + 1] + vhi[i].back();
  }

  // emit thresholds: window meets [A,B] iff F + eta > A and F - eta < B
  FixMeasure a_floor = FixMeasure::from_field_lo(FieldReal(a) - eta_x);
  FixMeasure b_ceil = FixMeasure::from_field_hi(FieldReal(b) + eta_x);

  std::vector<PointVal> pts;
  uint64_t point_cap = mem_budget_bytes() / 2 / sizeof(PointVal);

  // iterative DFS over coordinates; partial sums are exact fixed-point adds
  std::vector<size_t> idx(s, 0);
  std::vector<FixMeasure> plo(s + 1, FixMeasure::zero()), phi(s + 1, FixMeasure::zero());
  std::vector<uint64_t> pflat(s + 1, 0);
  int d = 0;
  while (d >= 0) {
    if (idx[d] >= vlo[d].size()) {
      --d;
      if (d >= 0) ++idx[d];
      continue;
    }
    FixMeasure nlo = plo[d] + vlo[d][idx[d]];
    FixMeasure nhi = phi[d] + vhi[d][idx[d]];
    // everything from this x on overshoots B + eta
    if (nlo + sufmin[d + 1] > b_ceil) {
      --d;
      if (d >= 0) ++idx[d];
      continue;
    }
    // whole subtree stays below A - eta: skip this x only (values ascend)
    if (nhi + sufmax[d + 1] <= a_floor) {
      ++idx[d];
      continue;
    }
    if (d + 1 == s) {
      if (pts.size() >= point_cap) throw BudgetError("point store exceeds memory budget");
      pts.push_back({nlo, nhi, pflat[d] + idx[d]});
      ++idx[d];
    } else {
      plo[d + 1] = nlo;
      phi[d + 1] = nhi;
      pflat[d + 1] = (pflat[d] + idx[d]) * (uint64_t)vlo[d + 1].size();
      ++d;
      idx[d] = 0;
    }
  }
  sw.points = pts.size();
  if (pts.empty()) return sw;

  std::sort(pts.begin(), pts.end(), [](const PointVal& p, const PointVal& q) {
    if (p.lo != q.lo) return p.lo < q.lo;
    return p.flat < q.flat;
  });

  auto exact_f = [&](uint64_t flat) { return eval_form(f, decode_flat(flat, box)); };
  FieldReal two_eta = eta_x + eta_x;

  // exact value of the current run's end member, computed lazily
  FieldReal b_exact;
  bool b_valid = false;
  auto run_end_exact = [&]() -> const FieldReal& {
    if (!b_valid) {
      b_exact = exact_f(sw.runs.back().b_flat);
      b_valid = true;
    }
    return b_exact;
  };

  for (auto& p : pts) {
    if (!sw.runs.empty()) {
      Run& cur = sw.runs.back();
      // next window starts before current run ends iff F' - F_max < 2 eta;
      // cur.b_flat is the exact argmax, its enclosure widened to cover ties
      FixMeasure nl_lo = p.lo - sw.eta_hi, nl_hi = p.hi - sw.eta_lo;
      FixMeasure ch_lo = cur.b_lo + sw.eta_lo, ch_hi = cur.b_hi + sw.eta_hi;
      bool merge;
      bool p_valid = false;
      FieldReal p_exact;
      if (nl_hi < ch_lo) {
        merge = true;
      } else if (nl_lo >= ch_hi) {
        merge = false;
      } else {
        ++sw.exact_rechecks;
        p_exact = exact_f(p.flat);
        p_valid = true;
        merge = (p_exact - run_end_exact()).cmp(two_eta) < 0;
      }
      if (merge) {
        // sorted by lo, so p.lo >= cur.b_lo; the end enclosure must contain
        // the max of all members, and b_flat must be the true argmax
        if (p.lo >= cur.b_hi) {
          cur.b_flat = p.flat;
          b_valid = p_valid;
          if (p_valid) b_exact = p_exact;
        } else {
          ++sw.exact_rechecks;
          if (!p_valid) p_exact = exact_f(p.flat);
          if (p_exact.cmp(run_end_exact()) >= 0) {
            cur.b_flat = p.flat;
            b_exact = p_exact;
            b_valid = true;
          }
        }
        cur.b_lo = std::max(cur.b_lo, p.lo);
        cur.b_hi = std::max(cur.b_hi, p.hi);
        continue;
      }
    }
    sw.runs.push_back({p.lo, p.hi, p.flat, p.lo, p.hi, p.flat});
    b_valid = false;
  }
  return sw;
}

// Certified measure of the runs clipped to [lo_clip, hi_clip].
void clipped_measure(const Sweep& sw, const FieldReal& a, const FieldReal& b, FixMeasure& out_lo,
                     FixMeasure& out_hi) {
  FixMeasure a_lo = FixMeasure::from_field_lo(a), a_hi = FixMeasure::from_field_hi(a);
  FixMeasure b_lo = FixMeasure::from_field_lo(b), b_hi = FixMeasure::from_field_hi(b);
  out_lo = FixMeasure::zero();
  out_hi = FixMeasure::zero();
  for (auto& r : sw.runs) {
    FixMeasure start_hi = r.a_hi - sw.eta_lo, start_lo = r.a_lo - sw.eta_hi;
    FixMeasure end_lo = r.b_lo + sw.eta_lo, end_hi = r.b_hi + sw.eta_hi;
    FixMeasure c_lo = std::min(end_lo, b_lo) - std::max(start_hi, a_hi);
    FixMeasure c_hi = std::min(end_hi, b_hi) - std::max(start_lo, a_lo);
    if (c_lo > FixMeasure::zero()) out_lo = out_lo + c_lo;
    if (c_hi > FixMeasure::zero()) out_hi = out_hi + c_hi;
  }
}

}  // namespace

IntervalSet represented_set(const ShiftedCubeForm& f, const Rat& a, const Rat& b,
                            const RealSpec& eta) {
  Sweep sw = sweep_represented(f, a, b, eta);
  IntervalSet out;
  out.points = sw.points;
  out.exact_rechecks = sw.exact_rechecks;
  double ad = Rat(a).get_d(), bd = Rat(b).get_d();
  for (auto& r : sw.runs) {
    RealInterval iv;
    iv.lo = std::max(r.a_lo.to_double() - sw.eta_d, ad);
    iv.hi = std::min(r.b_lo.to_double() + sw.eta_d, bd);
    if (iv.lo < iv.hi) out.intervals.push_back(iv);
  }
  FixMeasure mlo, mhi;
  clipped_measure(sw, FieldReal(a), FieldReal(b), mlo, mhi);
  out.measure_lo = mlo.to_double();
  out.measure_hi = mhi.to_double();
  return out;
}

MeasureBracket unrepresented_measure(const ShiftedCubeForm& f, const Rat& a, const Rat& b,
                                     const RealSpec& eta) {
  Sweep sw = sweep_represented(f, a, b, eta);
  FixMeasure mlo, mhi;
  clipped_measure(sw, FieldReal(a), FieldReal(b), mlo, mhi);
  FieldReal len(b - a);
  MeasureBracket out;
  out.lo = (FixMeasure::from_field_lo(len) - mhi).to_double();
  out.hi = (FixMeasure::from_field_hi(len) - mlo).to_double();
  if (out.lo < 0) out.lo = 0;
  return out;
}

double closed_cube_volume(int s) {
  if (s < 1) throw SpecError("s must be positive");
  mpfr_t g43, gs, r;
  mpfr_inits2(128, g43, gs, r, (mpfr_ptr) nullptr);
  mpfr_set_ui(r, 4, MPFR_RNDN);
  mpfr_div_ui(r, r, 3, MPFR_RNDN);
  mpfr_gamma(g43, r, MPFR_RNDN);
  mpfr_pow_ui(g43, g43, (unsigned long)s, MPFR_RNDN);
  mpfr_set_ui(r, (unsigned long)s, MPFR_RNDN);
  mpfr_div_ui(r, r, 3, MPFR_RNDN);
  mpfr_add_ui(r, r, 1, MPFR_RNDN);
  mpfr_gamma(gs, r, MPFR_RNDN);
  mpfr_div(r, g43, gs, MPFR_RNDN);
  double v = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clears(g43, gs, r, (mpfr_ptr) nullptr);
  return v;
}

double volume_bound_theorem4(double eta, double n) {
  if (eta < 0 || n <= 0) throw SpecError("need eta >= 0 and N > 0");
  return 2.0 * eta * (n + 10.0 * std::pow(n, 2.0 / 3.0)) * closed_cube_volume(3);
}

double qmc_cube_volume(int s, uint64_t points) {
  static const int primes[8] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (s < 1 || s > 8) throw SpecError("qmc volume supports 1 <= s <= 8");
  if (points == 0) throw SpecError("need at least one sample");
  uint64_t hits = 0;
  for (uint64_t i = 1; i <= points; ++i) {
    double acc = 0;
    for (int j = 0; j < s && acc <= 1.0; ++j) {
      // radical-inverse of i in base primes[j]
      double t = 0, scale = 1.0 / primes[j];
      for (uint64_t k = i; k; k /= (uint64_t)primes[j]) {
        t += (double)(k % (uint64_t)primes[j]) * scale;
        scale /= primes[j];
      }
      acc += t * t * t;
    }
    if (acc <= 1.0) ++hits;
  }
  return (double)hits / (double)points;
}

DensityProfile density_profile(const ShiftedCubeForm& f, const Rat& n, const RealSpec& eta,
                               int num_prefixes) {
  if (num_prefixes < 1) throw SpecError("need at least one prefix");
  int s = f.s();
  DensityProfile out;

  // cap N so the box precondition and point-store budget hold
  Rat n_used = n;
  double eta_d = eta.exact().to_double();
  uint64_t point_cap = mem_budget_bytes() / 2 / sizeof(PointVal);
  double vs = closed_cube_volume(s);
  auto feasible = [&](const Rat& nn) {
    double m = nn.get_d() + eta_d;
    double per_coord = std::pow(m, 1.0 / 3.0) + 2;
    return std::pow(per_coord, s) <= 1e8 && vs * std::pow(m, s / 3.0) * 1.2 + 1e4 <= (double)point_cap;
  };
  while (!feasible(n_used)) {
    n_used /= 2;
    out.truncated = true;
    if (n_used < 1) throw BudgetError("no feasible enumeration scale");
  }
  out.n_used = n_used.get_d();

  Sweep sw = sweep_represented(f, Rat(0), n_used, eta);
  for (int k = 1; k <= num_prefixes; ++k) {
    Rat nk = n_used / Rat(Int(1) << (num_prefixes - k));
    FixMeasure mlo, mhi;
    clipped_measure(sw, FieldReal(Rat(0)), FieldReal(nk), mlo, mhi);
    double nd = nk.get_d();
    out.prefixes.push_back(nd);
    out.rep_lo.push_back(mlo.to_double());
    out.rep_hi.push_back(mhi.to_double());
    out.unrep_fraction_lo.push_back(std::max(0.0, (nd - mhi.to_double()) / nd));
    out.unrep_fraction_hi.push_back((nd - mlo.to_double()) / nd);
  }
  return out;
}

}  // namespace cubeshift
