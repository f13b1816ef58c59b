#include "cubeshift/engine.hpp"

#include <algorithm>

#include "cubeshift/util.hpp"

namespace cubeshift {

namespace {

// Table values are rounded down with error < 2 ulps each (224-bit enclosure
// then fixed-point floor). A sum of k entries therefore lies within
// [sum~, sum~ + 2k ulp), and the window bounds within [b~, b~ + 2 ulp).
constexpr int64_t kPerTermUlps = 2;

struct WindowFix {
  FixSum lo, hi;       // downward-rounded tau-eta / tau+eta
  int64_t slack;       // 2k: total rounding band of a k-term sum
};

enum class Verdict3 { Accept, Reject, Exact };

Verdict3 classify(const FixSum& sum, const WindowFix& wf) {
  if (sum >= wf.lo.nudged(kPerTermUlps) && sum <= wf.hi.nudged(-wf.slack))
    return Verdict3::Accept;
  if (sum <= wf.lo.nudged(-wf.slack) || sum >= wf.hi.nudged(kPerTermUlps))
    return Verdict3::Reject;
  return Verdict3::Exact;
}

}  // namespace

TermTable make_term_table(int64_t lo, int64_t hi,
                          const std::function<FieldReal(int64_t)>& f) {
  TermTable t;
  if (hi < lo) throw SpecError("term table range with hi < lo");
  t.vals.reserve((size_t)(hi - lo));
  for (int64_t x = lo + 1; x <= hi; ++x) t.vals.push_back(FixSum::from_field_lo(f(x)));
  t.exact = [f, lo](size_t i) { return f(lo + 1 + (int64_t)i); };
  t.decode = [lo](size_t i, std::vector<int64_t>& out) { out.push_back(lo + 1 + (int64_t)i); };
  t.coords = 1;
  return t;
}

namespace {

struct Walker {
  const std::vector<TermTable>& tables;
  const Window& w;
  const EnumOptions& opt;
  WindowFix wf;
  EnumResult out;

  explicit Walker(const std::vector<TermTable>& t, const Window& win, const EnumOptions& o)
      : tables(t), w(win), opt(o) {
    wf.lo = FixSum::from_field_lo(win.lo());
    wf.hi = FixSum::from_field_lo(win.hi());
    wf.slack = kPerTermUlps * (int64_t)(t.size() + 1);
  }

  void take(const std::vector<size_t>& idx, bool needs_exact) {
    FieldReal value;
    if (needs_exact || opt.emit) {
      for (size_t d = 0; d < tables.size(); ++d) value += tables[d].exact(idx[d]);
      if (needs_exact && !in_window(value, w)) return;
    }
    ++out.count;
    if (!opt.emit) return;
    if (out.solutions.size() >= opt.max_emitted) throw BudgetError("solution list too large");
    SolutionRecord rec;
    for (size_t d = 0; d < tables.size(); ++d) tables[d].decode(idx[d], rec.x);
    rec.value = value;
    rec.deviation = (value - w.tau_exact).abs();
    out.solutions.push_back(std::move(rec));
  }
};

void sort_solutions(EnumResult& r) {
  std::sort(r.solutions.begin(), r.solutions.end(),
            [](const SolutionRecord& a, const SolutionRecord& b) { return a.x < b.x; });
}

}  // namespace

EnumResult brute_force_enumerate(const std::vector<TermTable>& tables, const Window& w,
                                 const EnumOptions& opt) {
  size_t k = tables.size();
  Walker walk(tables, w, opt);
  // Suffix min/max of table values for subtree pruning.
  std::vector<FixSum> sufmin(k + 1, FixSum::zero()), sufmax(k + 1, FixSum::zero());
  for (size_t d = k; d-- > 0;) {
    auto [mn, mx] = std::minmax_element(tables[d].vals.begin(), tables[d].vals.end());
    sufmin[d] = sufmin[d + 1] + *mn;
    sufmax[d] = sufmax[d + 1] + *mx;
  }
  std::vector<size_t> idx(k, 0);
  std::function<void(size_t, FixSum)> rec = [&](size_t d, FixSum partial) {
    FixSum best_lo = partial + sufmin[d], best_hi = partial + sufmax[d];
    if (best_lo >= walk.wf.hi.nudged(kPerTermUlps) ||
        best_hi <= walk.wf.lo.nudged(-walk.wf.slack))
      return;
    if (d == k) {
      switch (classify(partial, walk.wf)) {
        case Verdict3::Accept: walk.take(idx, false); break;
        case Verdict3::Exact: walk.take(idx, true); break;
        case Verdict3::Reject: break;
      }
      return;
    }
    for (size_t i = 0; i < tables[d].size(); ++i) {
      idx[d] = i;
      rec(d + 1, partial + tables[d].vals[i]);
    }
  };
  rec(0, FixSum::zero());
  sort_solutions(walk.out);
  return std::move(walk.out);
}

EnumResult mitm_enumerate(const std::vector<TermTable>& tables, const Window& w,
                          const EnumOptions& opt) {
  size_t k = tables.size();
  if (k < 2) return brute_force_enumerate(tables, w, opt);
  size_t ka = (k + 1) / 2;  // first half, enumerated lexicographically

  uint64_t nb = 1;
  for (size_t d = ka; d < k; ++d) {
    nb *= tables[d].size();
    if (nb > (uint64_t(1) << 40)) throw BudgetError("meet-in-the-middle half too large");
  }
  if (nb * 24 > mem_budget_bytes())
    throw BudgetError("meet-in-the-middle half exceeds memory budget");

  // Right half: value-sorted flat enumeration; flat index encodes the tuple
  // row-major, so (value, index) order realizes the lexicographic tie-break.
  struct Entry {
    FixSum v;
    uint64_t flat;
  };
  std::vector<Entry> right(nb);
  {
    std::vector<size_t> ridx(k - ka, 0);
    for (uint64_t f = 0; f < nb; ++f) {
      FixSum v = FixSum::zero();
      for (size_t d = ka; d < k; ++d) v = v + tables[d].vals[ridx[d - ka]];
      right[f] = {v, f};
      for (size_t d = k; d-- > ka;) {
        if (++ridx[d - ka] < tables[d].size()) break;
        ridx[d - ka] = 0;
      }
    }
    std::sort(right.begin(), right.end(), [](const Entry& a, const Entry& b) {
      if (a.v != b.v) return a.v < b.v;
      return a.flat < b.flat;
    });
  }
  std::vector<uint64_t> rstride(k - ka, 1);
  for (size_t d = k - 1; d > ka; --d)
    rstride[d - 1 - ka] = rstride[d - ka] * tables[d].size();

  Walker walk(tables, w, opt);
  std::vector<size_t> idx(k, 0);
  std::vector<size_t> aidx(ka, 0);
  uint64_t na = 1;
  for (size_t d = 0; d < ka; ++d) na *= tables[d].size();

  for (uint64_t fa = 0; fa < na; ++fa) {
    FixSum va = FixSum::zero();
    for (size_t d = 0; d < ka; ++d) va = va + tables[d].vals[aidx[d]];
    // candidates: right values in [lo - slack - va, hi + 2 - va]
    FixSum lo_need = walk.wf.lo.nudged(-walk.wf.slack) - va;
    FixSum hi_need = walk.wf.hi.nudged(kPerTermUlps) - va;
    auto first = std::lower_bound(right.begin(), right.end(), lo_need,
                                  [](const Entry& e, const FixSum& v) { return e.v < v; });
    auto last = std::upper_bound(right.begin(), right.end(), hi_need,
                                 [](const FixSum& v, const Entry& e) { return v < e.v; });
    for (auto it = first; it != last; ++it) {
      Verdict3 v3 = classify(va + it->v, walk.wf);
      if (v3 == Verdict3::Reject) continue;
      if (v3 == Verdict3::Accept && !opt.emit) {
        ++walk.out.count;
        continue;
      }
      for (size_t d = 0; d < ka; ++d) idx[d] = aidx[d];
      uint64_t f = it->flat;
      for (size_t d = ka; d < k; ++d) {
        idx[d] = (size_t)(f / rstride[d - ka]);
        f %= rstride[d - ka];
      }
      walk.take(idx, v3 == Verdict3::Exact);
    }
    for (size_t d = ka; d-- > 0;) {
      if (++aidx[d] < tables[d].size()) break;
      aidx[d] = 0;
    }
  }
  sort_solutions(walk.out);
  return std::move(walk.out);
}

}  // namespace cubeshift
