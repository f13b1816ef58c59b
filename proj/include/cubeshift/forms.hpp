#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubeshift/fieldreal.hpp"
#include "cubeshift/realspec.hpp"

namespace cubeshift {

// F(x) = sum_i (x_i - mu_i)^3 with exact real shifts.
struct ShiftedCubeForm {
  std::vector<RealSpec> shifts;
  int s() const { return (int)shifts.size(); }
  static ShiftedCubeForm from_strings(const std::vector<std::string>& specs);
  static ShiftedCubeForm from_json(const std::string& text);
  std::string to_json() const;
};

// h(x) = b3 x^3 + b2 x^2 + b1 x + b0, b3 != 0.
struct CubicPolynomial {
  RealSpec b3, b2, b1, b0;
  FieldReal eval(const FieldReal& x) const;
  FieldReal eval_int(int64_t x) const;
  void validate() const;           // structure: nonzero leading coefficient
  void validate_for_eval() const;  // adds the short-decimal gate
};

// H(x) = sum_i h_i(x_i).
struct CubicSystem {
  std::vector<CubicPolynomial> polys;
  int s() const { return (int)polys.size(); }
  static CubicSystem from_json(const std::string& text);
  std::string to_json() const;
};

// Target window |value - tau| < eta (strict; exact boundary never counts).
struct Window {
  RealSpec tau, eta;
  Window() = default;
  Window(RealSpec t, RealSpec e);
  FieldReal tau_exact;  // cached
  FieldReal eta_exact;
  FieldReal lo() const { return tau_exact - eta_exact; }
  FieldReal hi() const { return tau_exact + eta_exact; }
};

// Half-open integer ranges (lo_i, hi_i] per variable.
struct SearchBox {
  std::vector<std::pair<int64_t, int64_t>> ranges;
  uint64_t cardinality() const;
  static SearchBox parse(const std::string& text, int s);  // "lo:hi,lo:hi,..."
};

FieldReal eval_form(const ShiftedCubeForm& f, const std::vector<int64_t>& x);
FieldReal eval_system(const CubicSystem& h, const std::vector<int64_t>& x);

bool in_window(const FieldReal& value, const Window& w);       // exact, total
Ternary in_window(const Interval& value, const Window& w);     // may be Undecidable
// Escalating convenience: retries at 2x precision via the exact enclosure,
// throws PrecisionError when the interval cannot decide.
bool in_window_checked(const Interval& value, const Window& w);

// Default enumeration box: lo_i = floor(mu_i) (keeps x - mu_i > 0), hi_i the
// largest integer with (hi_i - mu_i)^3 <= tau + eta. All decisions exact.
SearchBox default_box(const ShiftedCubeForm& f, const Window& w);

}  // namespace cubeshift
