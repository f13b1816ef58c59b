#include <functional>

#include "cubeshift/circle.hpp"

namespace cubeshift {

void ArcParams::validate() const {
  if (!(p > 1)) throw SpecError("arcs need P > 1");
  if (!(xi > 0 && xi < 1)) throw SpecError("arcs need 0 < xi < 1");
  if (t < 1) throw SpecError("arcs need T >= 1");
}

std::string arc_class_name(ArcClass c) {
  switch (c) {
    case ArcClass::Major: return "major";
    case ArcClass::Minor: return "minor";
    case ArcClass::Trivial: return "trivial";
  }
  return "?";
}

namespace {

// Continued-fraction convergents of x, exact (FieldReal floor and inverse
// are both exact, so quadratic surds walk their periodic expansion without
// any rounding). cb returns false to stop; is_exact marks x == p/q.
void walk_convergents(FieldReal x, const std::function<bool(const Int&, const Int&, bool)>& cb) {
  Int pm = 1, qm = 0;  // previous convergent
  Int a = x.floor();
  Int pc = a, qc = 1;
  for (int iter = 0; iter < 1000; ++iter) {
    FieldReal frac = x - FieldReal(Rat(a));
    bool is_exact = frac.is_zero();
    if (!cb(pc, qc, is_exact) || is_exact) return;
    x = frac.inverse();
    a = x.floor();
    Int pn = a * pc + pm, qn = a * qc + qm;
    pm = pc;
    qm = qc;
    pc = pn;
    qc = qn;
  }
  throw PrecisionError("continued fraction did not terminate in 1000 steps");
}

Rat int_pow(const Rat& base, unsigned long e) {
  Rat r(1);
  for (unsigned long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

RationalApprox dirichlet_approx(const FieldReal& alpha, const Rat& q_cap) {
  if (q_cap < 1) throw SpecError("dirichlet approximation needs Q >= 1");
  RationalApprox out;
  bool have = false;
  walk_convergents(alpha, [&](const Int& p, const Int& q, bool) {
    if (Rat(q) > q_cap) return false;
    out.a = p;
    out.q = q;
    have = true;
    return true;
  });
  if (!have) throw PrecisionError("no convergent with q <= Q");  // unreachable: q0 = 1
  FieldReal dev = alpha.scaled(Rat(out.q)) - FieldReal(Rat(out.a));
  out.err = dev.abs().to_double();
  return out;
}

ArcClass classify_arc(const FieldReal& alpha, const ArcParams& arcs) {
  arcs.validate();
  FieldReal mag = alpha.abs();

  // |alpha| <= P^(xi-3) iff |alpha|^v * P^(3v-u) <= 1 with xi = u/v
  Rat xi = arcs.xi;
  xi.canonicalize();
  unsigned long u = xi.get_num().get_ui(), v = xi.get_den().get_ui();
  if (xi.get_den() > 64) throw SpecError("xi denominator too large for exact comparison");
  FieldReal lhs(Rat(1));
  for (unsigned long i = 0; i < v; ++i) lhs *= mag;
  lhs *= FieldReal(int_pow(arcs.p, 3 * v - u));
  if (lhs.cmp(FieldReal(Rat(1))) <= 0) return ArcClass::Major;
  if (mag.cmp(FieldReal(arcs.t)) <= 0) return ArcClass::Minor;
  return ArcClass::Trivial;
}

ClassicalMembership classify_classical(const FieldReal& alpha, int64_t p) {
  if (p <= 1) throw SpecError("classical arcs need P > 1");
  ClassicalMembership out;
  Int pcap((long)p);
  Rat thresh_sq = Rat(1) / Rat(Int(pcap * pcap * pcap));  // (P^(-3/2))^2
  walk_convergents(alpha, [&](const Int& pk, const Int& qk, bool) {
    if (qk > pcap) return false;
    FieldReal dev = alpha.scaled(Rat(qk)) - FieldReal(Rat(pk));
    if (dev.square().cmp(FieldReal(thresh_sq)) <= 0) {
      out.in_major = true;
      out.q = qk;
      out.a = pk;
      out.err = dev.abs().to_double();
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace cubeshift
