#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cubeshift/forms.hpp"

namespace cubeshift {

// ---------------------------------------------------------------------------
// kernels

enum class KernelKind { K, Kplus, Kminus, K1, K2plus, K2minus, Kdouble };
KernelKind parse_kernel_kind(const std::string& name);
std::string kernel_kind_name(KernelKind k);

struct KernelParams {
  double eta = 1;
  double delta = 0;  // used by Kplus/Kminus/K1/K2pm
};

// Every kernel here is sum_j w_j cos(2 pi c_j alpha) / (A alpha^2) with
// sum_j w_j = 0, evaluated stably as -2 sum_j w_j sin^2(pi c_j alpha)/(A a^2).
// The zero-sum structure gives the alpha^-2 decay and closed-form tails.
struct CosSum {
  std::vector<double> w, c;
  double a = 1;
  double at(double alpha) const;
  double at_zero() const;            // -2 pi^2 sum w_j c_j^2 / A
  double decay_constant() const;     // |kernel| <= decay/alpha^2
  double min_positive_freq() const;  // smallest nonzero |c_j|
};

CosSum make_kernel(KernelKind kind, const KernelParams& p);

double kernel_K(double alpha, double eta);
double kernel_Kpm(double alpha, const KernelParams& p, int sign);

struct FourierValue {
  double value = 0;
  double err = 0;  // quadrature estimate; tails are closed-form via Si
};
// integral over R of e(alpha t) * kernel(alpha) d alpha (kernel even, real)
FourierValue kernel_fourier(double t, KernelKind kind, const KernelParams& p);

// ---------------------------------------------------------------------------
// exponential sums

// Sums of unit vectors accumulated on a 2^-60 integer grid: each term's
// sin/cos is rounded to int64 once, so sums are exact integers and identities
// like f2 = f1(2X) - f1(X) hold bit for bit.
struct ExpSum {
  std::complex<double> value;
  __int128 re_grid = 0, im_grid = 0;
  uint64_t terms = 0;
};

// f_j(alpha, mu, X) = sum over (j-1)X < x <= jX of e(alpha (x - mu)^3)
ExpSum weyl_sum(int j, const RealSpec& alpha, const RealSpec& mu, double x_cap);

// Phi_h(alpha) = sum over (lo, hi] of e(alpha (h1(x+h) - h1(x))), exact
// difference polynomial expansion; and G(alpha) = sum_{h=1..H} Phi_h.
ExpSum differenced_weyl_sum(const CubicPolynomial& h1, const RealSpec& alpha, int64_t hstep,
                            int64_t lo, int64_t hi);
ExpSum aggregated_differenced_sum(const CubicPolynomial& h1, const RealSpec& alpha, int64_t h_max,
                                  int64_t lo, int64_t hi);

// S(q, v) = sum_{x=1..q} e((v3 x^3 + v2 x^2 + v1 x)/q), exact mod-q phases
ExpSum complete_exp_sum(int64_t q, int64_t v1, int64_t v2, int64_t v3);

// ---------------------------------------------------------------------------
// arcs

struct ArcParams {
  Rat p = Rat(2);   // scale P > 1
  Rat xi = Rat(1, 2);  // 0 < xi < 1
  Rat t = Rat(1);   // minor/trivial boundary, T >= 1
  void validate() const;
};

enum class ArcClass { Major, Minor, Trivial };
std::string arc_class_name(ArcClass c);

// |alpha| <= P^(xi-3): major; <= T: minor; else trivial. Exact comparisons
// via integer powers (xi rational).
ArcClass classify_arc(const FieldReal& alpha, const ArcParams& arcs);

struct RationalApprox {
  Int a = 0;
  Int q = 1;
  double err = 0;  // |q alpha - a|
};

// Dirichlet approximation via the exact continued fraction of alpha
// (FieldReal floor/inverse are exact, so this works for quadratic surds too):
// q <= Q and |q alpha - a| <= 1/Q, gcd(a, q) = 1.
RationalApprox dirichlet_approx(const FieldReal& alpha, const Rat& q_cap);

struct ClassicalMembership {
  bool in_major = false;  // some q <= P has |q alpha - a| <= P^(-3/2)
  Int q = 0, a = 0;       // witness when in_major
  double err = 0;
};

// Membership in the classical major arcs: scans continued-fraction
// convergents (best approximations of the second kind, so if any coprime
// pair q <= P works, the last convergent with q <= P does).
ClassicalMembership classify_classical(const FieldReal& alpha, int64_t p);

// ---------------------------------------------------------------------------
// integrals

struct ComplexQuad {
  std::complex<double> value;
  double err = 0;
};

// I(alpha, X) = integral from X to 2X of e(alpha x^3) dx. Oscillation-aware
// panels for moderate phase, two-term integration by parts with a certified
// remainder for fast phase.
ComplexQuad singular_integral(double alpha, double x);

struct RepresentationResult {
  double integral = 0;       // 2 Re integral over [0, R]
  double tail_err = 0;       // from the kernel alpha^-2 decay past R
  double quad_err = 0;
  double weighted_count = 0;  // exact sum of max(0, 1 - |F(x)-tau|/eta)
  uint64_t box_points = 0;
};

// integral over [-R, R] of prod_i g_i(alpha) e(-alpha tau) kernel(alpha),
// g_i the Weyl sum over (P, 2P] with shift mu_i, cross-checked against the
// exact triangle-weighted solution count it converges to.
RepresentationResult representation_integral(const ShiftedCubeForm& f, const Window& w,
                                             const ArcParams& arcs, KernelKind kind,
                                             const KernelParams& kp, double r_cap);

struct DirichletVolume {
  double closed_form = 0;  // Gamma(1/3)^s / Gamma(s/3)
  double estimate = 0;     // independent quadrature of the Beta-product
  double err = 0;
};
DirichletVolume dirichlet_volume(int s);

}  // namespace cubeshift
