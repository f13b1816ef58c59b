#pragma once

#include <cstdint>
#include <vector>

#include "cubeshift/forms.hpp"

namespace cubeshift {

// One maximal open interval of the represented set, clipped to [A, B].
// Endpoints here are display doubles; the sweep itself runs in 160-bit fixed
// point with exact fallback, and the certified measure bracket lives in
// IntervalSet::measure_lo/hi.
struct RealInterval {
  double lo = 0, hi = 0;
};

struct IntervalSet {
  std::vector<RealInterval> intervals;  // sorted, disjoint, open
  double measure_lo = 0, measure_hi = 0;
  uint64_t points = 0;          // lattice points whose window meets [A, B]
  uint64_t exact_rechecks = 0;  // merge decisions that needed exact arithmetic
};

struct MeasureBracket {
  double lo = 0, hi = 0;
};

// Union over x in the derived box of (F(x)-eta, F(x)+eta), clipped to [A, B].
// Throws BudgetError when the derived box exceeds 10^8 lattice points or the
// point store would exceed the memory budget.
IntervalSet represented_set(const ShiftedCubeForm& f, const Rat& a, const Rat& b,
                            const RealSpec& eta);

// (B - A) - measure(represented_set), complementary by construction.
MeasureBracket unrepresented_measure(const ShiftedCubeForm& f, const Rat& a, const Rat& b,
                                     const RealSpec& eta);

// 2*eta*(N + 10*N^(2/3)) * V3 with V3 = Gamma(4/3)^3, the volume of
// {t > 0 : t1^3 + t2^3 + t3^3 < 1}; upper bound on the represented measure
// in [0, N] for s = 3.
double volume_bound_theorem4(double eta, double n);

// V_s = Gamma(4/3)^s / Gamma(1 + s/3), and its quasi-Monte Carlo cross-check
// over [0,1]^s by a Halton net.
double closed_cube_volume(int s);
double qmc_cube_volume(int s, uint64_t points);

struct DensityProfile {
  std::vector<double> prefixes;     // N_k, geometrically spaced up to n_used
  std::vector<double> rep_lo, rep_hi;
  std::vector<double> unrep_fraction_lo, unrep_fraction_hi;
  bool truncated = false;  // requested N exceeded the enumeration budget
  double n_used = 0;
};

// Unrepresented fraction meas(Z(N_k))/N_k at num_prefixes geometric prefixes
// N_k = N / 2^(num_prefixes - k). Caps N when the box would blow the budget
// and reports the cap via `truncated`.
DensityProfile density_profile(const ShiftedCubeForm& f, const Rat& n, const RealSpec& eta,
                               int num_prefixes);

}  // namespace cubeshift
