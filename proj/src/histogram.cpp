#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "cubeshift/solver.hpp"
#include "cubeshift/util.hpp"

namespace cubeshift {

namespace {

// Bin histogram with integer masses stored as doubles. Masses stay exact:
// every stored histogram's total mass is the product of its coordinate range
// sizes, which the entry guard keeps below 2^53; only the final correlation
// can exceed that and runs in long double. err_per_bin becomes nonzero only
// after an FFT stage whose rounding could not be certified back to integers.
struct Hist {
  bool dense = false;
  int64_t offset = 0;                          // dense: bin index of mass[0]
  std::vector<double> mass;                    // dense payload
  std::vector<std::pair<int64_t, double>> nz;  // sparse payload, sorted by bin
  double total = 0;
  double err_per_bin = 0;

  uint64_t nnz() const {
    if (!dense) return nz.size();
    return (uint64_t)std::count_if(mass.begin(), mass.end(), [](double m) { return m != 0; });
  }
  template <typename F>
  void for_each(F f) const {
    if (dense) {
      for (size_t i = 0; i < mass.size(); ++i)
        if (mass[i] != 0) f(offset + (int64_t)i, mass[i]);
    } else {
      for (auto& [b, m] : nz) f(b, m);
    }
  }
  std::pair<int64_t, int64_t> bin_range() const {  // inclusive
    if (dense) return {offset, offset + (int64_t)mass.size() - 1};
    if (nz.empty()) return {0, -1};
    return {nz.front().first, nz.back().first};
  }
  double l2() const {
    double s = 0;
    for_each([&](int64_t, double m) { s += m * m; });
    return std::sqrt(s);
  }
};

void check_dense_budget(uint64_t len) {
  if (len * 8 * 4 > mem_budget_bytes())
    throw BudgetError("histogram bin span exceeds memory budget (raise CUBESHIFT_MEM_MB "
                      "or coarsen bin_width)");
}

Hist densify(const Hist& h, int64_t lo, int64_t hi) {
  Hist out;
  out.dense = true;
  out.offset = lo;
  check_dense_budget((uint64_t)(hi - lo + 1));
  out.mass.assign((size_t)(hi - lo + 1), 0.0);
  h.for_each([&](int64_t b, double m) { out.mass[(size_t)(b - lo)] += m; });
  out.total = h.total;
  out.err_per_bin = h.err_per_bin;
  return out;
}

// Direct convolution by scatter-add; exact (integer masses below 2^53).
Hist conv_scatter(const Hist& a, const Hist& b, int64_t cap) {
  auto [alo, ahi] = a.bin_range();
  auto [blo, bhi] = b.bin_range();
  Hist out;
  out.total = a.total * b.total;
  out.err_per_bin = a.err_per_bin * b.total + b.err_per_bin * a.total;
  if (ahi < alo || bhi < blo) return out;
  int64_t lo = alo + blo, hi = std::min(ahi + bhi, cap);
  if (hi < lo) {
    out.total = 0;
    return out;
  }
  uint64_t span = (uint64_t)(hi - lo + 1);
  uint64_t ops = (uint64_t)a.nnz() * b.nnz();
  if (!a.dense && !b.dense && ops < span / 4 && ops < (1u << 22)) {
    std::map<int64_t, double> acc;
    for (auto& [ba, ma] : a.nz)
      for (auto& [bb, mb] : b.nz) {
        int64_t k = ba + bb;
        if (k <= cap) acc[k] += ma * mb;
      }
    out.nz.assign(acc.begin(), acc.end());
    return out;
  }
  check_dense_budget(span);
  out.dense = true;
  out.offset = lo;
  out.mass.assign((size_t)span, 0.0);
  a.for_each([&](int64_t ba, double ma) {
    b.for_each([&](int64_t bb, double mb) {
      int64_t k = ba + bb;
      if (k <= cap) out.mass[(size_t)(k - lo)] += ma * mb;
    });
  });
  return out;
}

// FFT convolution with a Percival-style rounding bound folded into the
// bracket when the result cannot be certified back to integers.
Hist conv_fft(const Hist& a, const Hist& b, int64_t cap) {
  auto [alo, ahi] = a.bin_range();
  auto [blo, bhi] = b.bin_range();
  Hist da = densify(a, alo, ahi), db = densify(b, blo, bhi);
  size_t n = 1;
  while (n < da.mass.size() + db.mass.size()) n <<= 1;
  check_dense_budget(2 * n);
  std::vector<double> fa(n, 0.0), fb(n, 0.0);
  std::copy(da.mass.begin(), da.mass.end(), fa.begin());
  std::copy(db.mass.begin(), db.mass.end(), fb.begin());
  std::vector<std::complex<double>> ca(n / 2 + 1), cb(n / 2 + 1);
  fftw_plan pa = fftw_plan_dft_r2c_1d((int)n, fa.data(),
                                      reinterpret_cast<fftw_complex*>(ca.data()), FFTW_ESTIMATE);
  fftw_plan pb = fftw_plan_dft_r2c_1d((int)n, fb.data(),
                                      reinterpret_cast<fftw_complex*>(cb.data()), FFTW_ESTIMATE);
  fftw_execute(pa);
  fftw_execute(pb);
  for (size_t i = 0; i <= n / 2; ++i) ca[i] *= cb[i] / (double)n;
  fftw_plan pi = fftw_plan_dft_c2r_1d((int)n, reinterpret_cast<fftw_complex*>(ca.data()),
                                      fa.data(), FFTW_ESTIMATE);
  fftw_execute(pi);
  fftw_destroy_plan(pa);
  fftw_destroy_plan(pb);
  fftw_destroy_plan(pi);

  double fft_err = 3.0 * std::log2((double)n) * 1.1e-16 * da.l2() * db.l2();
  Hist out;
  out.dense = true;
  out.offset = alo + blo;
  out.total = a.total * b.total;
  size_t keep = da.mass.size() + db.mass.size() - 1;
  int64_t hi = std::min(out.offset + (int64_t)keep - 1, cap);
  if (hi < out.offset) {
    out.dense = false;
    out.total = 0;
    return out;
  }
  out.mass.assign(fa.begin(), fa.begin() + (size_t)(hi - out.offset + 1));
  double carried = a.err_per_bin * b.total + b.err_per_bin * a.total;
  if (fft_err + carried < 0.49 && a.err_per_bin == 0 && b.err_per_bin == 0) {
    for (auto& m : out.mass) m = std::nearbyint(m);
    out.err_per_bin = 0;
  } else {
    out.err_per_bin = fft_err + carried;
  }
  return out;
}

}  // namespace

CountBracket histogram_count(const ShiftedCubeForm& f, const Window& w, const Rat& bin_width,
                             const HistogramConfig& cfg) {
  if (sgn(bin_width) <= 0) throw SpecError("bin_width must be positive");
  int s = f.s();
  CountBracket out;
  out.bin_width = bin_width;
  FieldReal whi = w.hi(), wlo = w.lo();
  if (whi.sign() <= 0) return out;  // all form values are positive

  FieldReal inv_w(Rat(1) / bin_width);
  // cap: first bin index whose interval starts at or above tau + eta
  int64_t cap = to_i64((whi * inv_w).floor()) + 1;
  SearchBox box = default_box(f, w);
  if (box.cardinality() > (uint64_t(1) << 62)) throw BudgetError("histogram box too large");

  std::vector<Hist> hists;
  for (int i = 0; i < s; ++i) {
    f.shifts[i].validate_for_eval();
    FieldReal mu = f.shifts[i].exact();
    std::map<int64_t, double> acc;
    for (int64_t x = box.ranges[i].first + 1; x <= box.ranges[i].second; ++x) {
      FieldReal v = (FieldReal(Rat((long)x)) - mu).cube();
      int64_t b = to_i64((v * inv_w).floor());
      if (b <= cap) acc[b] += 1.0;
    }
    Hist h;
    h.nz.assign(acc.begin(), acc.end());
    for (auto& [bb, m] : h.nz) h.total += m;
    hists.push_back(std::move(h));
  }

  // Balanced pairwise reduction down to two histograms, then a windowed
  // correlation (only a handful of output bins are ever needed).
  while (hists.size() > 2) {
    std::vector<Hist> next;
    for (size_t i = 0; i + 1 < hists.size(); i += 2) {
      uint64_t ops = (uint64_t)hists[i].nnz() * hists[i + 1].nnz();
      next.push_back(ops > cfg.ops_budget ? conv_fft(hists[i], hists[i + 1], cap)
                                          : conv_scatter(hists[i], hists[i + 1], cap));
    }
    if (hists.size() & 1) next.push_back(std::move(hists.back()));
    hists = std::move(next);
  }

  // Output bin k covers sums in [k*w, (k+s)*w). Coverage rules:
  //   lower: interval inside the open window  (k*w > tau-eta, (k+s)*w <= tau+eta)
  //   upper: interval intersects it           (k*w < tau+eta, (k+s)*w > tau-eta)
  auto bin_lo = [&](int64_t k) { return FieldReal(Rat((long)k) * bin_width); };
  auto bin_hi = [&](int64_t k) { return FieldReal(Rat((long)(k + s)) * bin_width); };
  auto inside = [&](int64_t k) {
    return (bin_lo(k) - wlo).sign() > 0 && (whi - bin_hi(k)).sign() >= 0;
  };
  auto intersects = [&](int64_t k) {
    return (whi - bin_lo(k)).sign() > 0 && (bin_hi(k) - wlo).sign() > 0;
  };

  // candidate k range: (tau-eta)/w - s - 1 .. (tau+eta)/w + 1
  int64_t kmin = 0;
  if (wlo.sign() > 0) kmin = std::max<int64_t>(0, to_i64((wlo * inv_w).floor()) - s - 1);
  int64_t kmax = to_i64((whi * inv_w).floor()) + 1;

  long double lower = 0, upper = 0, err = 0;
  auto add_bin = [&](int64_t k, long double m, double e) {
    if (k < kmin || k > kmax || m == 0) return;
    if (intersects(k)) {
      upper += m;
      err += e;
      if (inside(k)) lower += m;
    }
  };

  if (hists.size() == 1) {
    hists[0].for_each([&](int64_t b, double m) { add_bin(b, m, hists[0].err_per_bin); });
  } else {
    const Hist& a = hists[0];
    const Hist& b = hists[1];
    auto [blo, bhi] = b.bin_range();
    double carried = a.err_per_bin * b.total + b.err_per_bin * a.total;
    for (int64_t k = kmin; k <= kmax; ++k) {
      if (!intersects(k)) continue;
      long double m = 0;
      a.for_each([&](int64_t ba, double ma) {
        int64_t need = k - ba;
        if (need < blo || need > bhi) return;
        if (b.dense) {
          m += (long double)ma * b.mass[(size_t)(need - b.offset)];
        } else {
          auto it = std::lower_bound(b.nz.begin(), b.nz.end(), need,
                                     [](const auto& p, int64_t v) { return p.first < v; });
          if (it != b.nz.end() && it->first == need) m += (long double)ma * it->second;
        }
      });
      add_bin(k, m, carried);
    }
  }

  long double lo_val = lower - err, hi_val = upper + err;
  if (err > 0.01L) {  // non-integer masses survived: round outward
    out.lower = lo_val <= 0 ? 0 : (uint64_t)floorl(lo_val);
    out.upper = hi_val <= 0 ? 0 : (uint64_t)ceill(hi_val);
  } else {  // masses are exact integers
    out.lower = lo_val <= 0 ? 0 : (uint64_t)llroundl(lo_val);
    out.upper = hi_val <= 0 ? 0 : (uint64_t)llroundl(hi_val);
  }
  return out;
}

}  // namespace cubeshift
