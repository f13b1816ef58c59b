#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cubeshift/fixed192.hpp"
#include "cubeshift/forms.hpp"

namespace cubeshift {

// One summand of a separable objective: a finite list of (coordinate tuple ->
// exact value) entries, with a downward-rounded fixed-point copy for the hot
// path. Entries are indexed 0..size-1; decode() appends the coordinates of an
// entry to an output tuple, exact() reconstructs its value on demand (only
// touched near window boundaries).
struct TermTable {
  std::vector<FixSum> vals;
  std::function<FieldReal(size_t)> exact;
  std::function<void(size_t, std::vector<int64_t>&)> decode;
  int coords = 1;  // how many tuple positions decode() appends
  size_t size() const { return vals.size(); }
};

// Single-variable table over the half-open range (lo, hi].
TermTable make_term_table(int64_t lo, int64_t hi,
                          const std::function<FieldReal(int64_t)>& f);

struct SolutionRecord {
  std::vector<int64_t> x;
  FieldReal value;
  FieldReal deviation;  // |value - tau|
};

struct EnumResult {
  uint64_t count = 0;
  std::vector<SolutionRecord> solutions;  // filled only when emitting
};

struct EnumOptions {
  bool emit = false;
  uint64_t max_emitted = 2'000'000;  // guard against accidental floods
};

// Exhaustive odometer walk with suffix-bound pruning. Exact near boundaries.
EnumResult brute_force_enumerate(const std::vector<TermTable>& tables, const Window& w,
                                 const EnumOptions& opt);

// Meet-in-the-middle: first ceil(k/2) tables enumerated lexicographically,
// the rest sorted by value (ties by index, i.e. tuple order). Same contract
// and identical output as brute_force_enumerate.
EnumResult mitm_enumerate(const std::vector<TermTable>& tables, const Window& w,
                          const EnumOptions& opt);

}  // namespace cubeshift
