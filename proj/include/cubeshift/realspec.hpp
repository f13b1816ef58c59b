#pragma once

#include <string>
#include <variant>

#include "cubeshift/fieldreal.hpp"
#include "cubeshift/numeric.hpp"

namespace cubeshift {

// Exact, serializable description of a real parameter. Three variants:
//   rational      "p/q" or "n"
//   surd          "surd:p,q,d,r"  meaning (p + q*sqrt(d))/r, d >= 2 nonsquare
//   decimal       "dec:<digits>[e<exp>][!irr]", value exactly the decimal;
//                 the !irr marker declares the number it stands for irrational
//                 (used by the irrationality certification, never by arithmetic).
// Parsing is strict and round-trips bit-exactly through to_string().
class RealSpec {
 public:
  struct Rational {
    Rat value;
  };
  struct Surd {
    Int p, q;
    unsigned long d;
    Int r;
  };
  struct Decimal {
    std::string mantissa;  // as written, sign and dot included
    long exponent;         // power of ten, 0 when absent
    bool declared_irrational;
    Rat value;
  };

  RealSpec() : v_(Rational{Rat(0)}) {}
  static RealSpec parse(const std::string& s);
  static RealSpec from_rat(const Rat& q) { return RealSpec(Rational{q}); }

  std::string to_string() const;
  FieldReal exact() const;
  double approx() const { return exact().to_double(); }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_surd() const { return std::holds_alternative<Surd>(v_); }
  bool is_decimal() const { return std::holds_alternative<Decimal>(v_); }
  bool declared_irrational() const;
  int significant_digits() const;  // decimals only; 0 otherwise

  // Invariant gate: decimals standing in for shifts must carry >= 30
  // significant digits before they may enter a form evaluation.
  void validate_for_eval() const;

  const Surd* surd_parts() const { return std::get_if<Surd>(&v_); }

 private:
  explicit RealSpec(std::variant<Rational, Surd, Decimal> v) : v_(std::move(v)) {}
  std::variant<Rational, Surd, Decimal> v_;
};

}  // namespace cubeshift
