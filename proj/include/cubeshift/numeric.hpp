#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubeshift {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy; the CLI maps these onto its exit codes (1/2/3).
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Three-valued answer for interval-backed predicates. Exact paths never
// return Undecidable.
enum class Ternary { False = 0, True = 1, Undecidable = 2 };

inline int64_t to_i64(const Int& z) {
  if (!z.fits_slong_p()) throw BudgetError("integer out of int64 range");
  return static_cast<int64_t>(z.get_si());
}

inline Rat rat_of_double(double x) { return Rat(x); }  // exact binary value

inline int sgn_rat(const Rat& q) { return sgn(q); }

}  // namespace cubeshift
