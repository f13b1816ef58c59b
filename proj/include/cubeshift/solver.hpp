#pragma once

#include "cubeshift/engine.hpp"
#include "cubeshift/forms.hpp"

namespace cubeshift {

// Exhaustive and meet-in-the-middle solvers. Both return the same
// lexicographically sorted, duplicate-free solution list; mitm_solve is the
// fast path (splits variables, sorts the right half by value).
std::vector<SolutionRecord> brute_force_solve(const ShiftedCubeForm& f, const Window& w,
                                              const SearchBox& box);
std::vector<SolutionRecord> brute_force_solve(const CubicSystem& h, const Window& w,
                                              const SearchBox& box);
EnumResult mitm_solve(const ShiftedCubeForm& f, const Window& w, const SearchBox& box,
                      bool emit_solutions);
EnumResult mitm_solve(const CubicSystem& h, const Window& w, const SearchBox& box,
                      bool emit_solutions);

// N(tau): solutions over the default box (all x with (x_i - mu_i)^3 <= tau+eta).
uint64_t count_window(const ShiftedCubeForm& f, const Window& w);

// Certified bracket from histogram convolution at the given bin width.
struct CountBracket {
  uint64_t lower = 0, upper = 0;
  Rat bin_width;
};
struct HistogramConfig {
  uint64_t ops_budget = 200'000'000;  // sparse pair-products before going dense
};
CountBracket histogram_count(const ShiftedCubeForm& f, const Window& w, const Rat& bin_width,
                             const HistogramConfig& cfg = {});

// Heuristic main term 2*eta*Gamma(4/3)^s / Gamma(s/3) * tau^(s/3 - 1).
double asymptotic_main_term(int s, double eta, double tau);

// Moment ranges for the fourth-moment counts: primary (P, 2P] (or (P, cP]),
// secondary (P^e, 2 P^e] with e in {5/6, 4/5}; boundaries decided by exact
// integer power comparisons, so P = k^6 etc. round correctly.
struct MomentRanges {
  double P;
  std::pair<int64_t, int64_t> primary;    // half-open (lo, hi]
  std::pair<int64_t, int64_t> secondary;
  int exp_num, exp_den;                   // secondary exponent e = num/den
  static MomentRanges shifted(double P);             // e = 5/6, primary (P, 2P]
  static MomentRanges general(double P, double c);   // e = 4/5, primary (P, cP]
};

// S4 moment counts: quadruples with |D1 + D2| < eta where D_i is the
// difference of two terms in the i-th range (x and y enter with opposite
// signs). Diagonal pairs x=y always count.
struct MomentCount {
  uint64_t count = 0;
  uint64_t diagonal = 0;  // n1 * n2 lower bound
  MomentRanges ranges;
};
MomentCount count_S4_shifted(const RealSpec& mu1, const RealSpec& mu2, double P,
                             const Rat& eta);
MomentCount count_S4_general(const CubicPolynomial& h1, const CubicPolynomial& h2, double c,
                             double P, const Rat& eta);

// Gap check: true iff |h(x) - h(y)| < eta implies x = y on (P, 2P].
// Requires h increasing there (checked exactly via the derivative).
bool diagonal_only_check(const CubicPolynomial& h, double P, const Rat& eta);

}  // namespace cubeshift
