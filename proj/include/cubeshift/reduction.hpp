#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cubeshift/forms.hpp"

namespace cubeshift {

// q(y) = y^T A y + b.y + c0 with A symmetric. Coefficients are exact; the
// certification mask marks which nonconstant coefficients stand for a known
// real (rational/surd data) as opposed to a decimal approximation. An empty
// mask means fully certified.
struct QuadraticPolynomial {
  std::vector<std::vector<FieldReal>> a;
  std::vector<FieldReal> b;
  FieldReal c0;
  std::vector<uint8_t> nc_cert;  // upper triangle of a row-major, then b

  int n() const { return (int)b.size(); }
  void validate() const;
  bool diagonal() const;
  FieldReal eval(const std::vector<FieldReal>& y) const;
  FieldReal eval_int(const std::vector<int64_t>& y) const;
  // (value, certified) for every nonconstant coefficient, mask order
  std::vector<std::pair<FieldReal, bool>> nonconstant_coeffs() const;
};

// x(y) = (a + y1, y2, y3, -y1, -y2, -y3): the opposing-sign pairing kills
// every cubic term, leaving f(a) + 3 v.c(a) with v = (y1^2, y1, ..., y3).
struct SixCubeReduction {
  int a = 3;
  std::array<FieldReal, 6> c;
  std::array<bool, 6> c_certified{};
  FieldReal f_a;                 // value at y = 0
  QuadraticPolynomial quadratic; // diag(3c1, 3c3, 3c5), b = 3(c2, c4, c6), c0 = f_a
};

SixCubeReduction reduce_six_cubes(const ShiftedCubeForm& f, int a);
std::vector<int64_t> substituted_point(int a, const std::array<int64_t, 3>& y);

// center of the completed square: 2A xi = b, so Q(y + xi) = q(y) + constant
struct SquareCompletion {
  std::vector<FieldReal> xi;
  FieldReal constant;  // Q(xi) - q(0)
};
SquareCompletion complete_square(const QuadraticPolynomial& q);

// verdicts: True = some ratio certified irrational, False = all ratios
// certified rational, Undecidable otherwise
Ternary check_irrationality_pair(const CubicSystem& sys);
Ternary check_irrationality_poly(const QuadraticPolynomial& q);
std::string verdict_name(Ternary t);  // "holds" / "fails" / "unknown"

struct ReductionChoice {
  Ternary verdict;
  std::vector<SixCubeReduction> certificates;  // the chosen one, or both when unknown
};
ReductionChoice choose_reduction(const ShiftedCubeForm& f);

struct DenseSearchResult {
  std::vector<int64_t> witness;
  FieldReal value;      // q(witness)
  FieldReal deviation;  // |q(witness) - target|
  bool achieved = false;
  uint64_t visited = 0;
};

// minimum of |q(y) - target| over the max-norm ball of the given radius,
// scanned in shells so the witness is minimal in (deviation, max-norm, lex)
DenseSearchResult quadratic_dense_search(const QuadraticPolynomial& q, const RealSpec& target,
                                         const RealSpec& eta, int64_t radius);

}  // namespace cubeshift
