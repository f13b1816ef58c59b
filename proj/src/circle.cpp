#include <mpfr.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>

#include "cubeshift/circle.hpp"
#include "cubeshift/quadrature.hpp"

namespace cubeshift {

ComplexQuad singular_integral(double alpha, double x) {
  if (!(x > 0) || !std::isfinite(x) || !std::isfinite(alpha)) throw SpecError("singular integral needs finite alpha and X > 0");
  if (alpha == 0) return {std::complex<double>(x, 0), 0.0};
  if (alpha < 0) {
    ComplexQuad r = singular_integral(-alpha, x);
    return {std::conj(r.value), r.err};
  }
  double phi = 2 * M_PI * alpha;
  double budget = 1e-9 * x;
  ComplexQuad out;
  if (phi * x * x * x < 15000.0) {
    // total phase run is phi((2X)^3 - X^3) = 7 phi X^3; keep panels near a
    // quarter period of the fastest local oscillation
    double cycles = 7 * phi * x * x * x / (2 * M_PI);
    int panels = oscillation_panels(cycles, 120000);
    auto q = integrate_gk15(
        [phi](double g) {
          double p = phi * g * g * g;
          return std::complex<double>(std::cos(p), std::sin(p));
        },
        x, 2 * x, panels);
    out.value = q.value;
    out.err = q.err + 1e-13 * x;
  } else {
    // two integrations by parts against d(e^{i phi g^3}) = 3 i phi g^2 e(..) dg:
    // I = [e^{i phi g^3} (1/(3 i phi g^2) - 2/(9 phi^2 g^5))]_X^{2X} + R with
    // |R| <= (10/(9 phi^2)) int g^-6 = (2/9)(31/32) / (phi^2 X^5)
    auto bnd = [phi](double g) {
      double p = phi * g * g * g;
      std::complex<double> e(std::cos(p), std::sin(p));
      std::complex<double> lead(0.0, -1.0 / (3 * phi * g * g));
      double second = -2.0 / (9 * phi * phi * g * g * g * g * g);
      return e * (lead + second);
    };
    out.value = bnd(2 * x) - bnd(x);
    out.err = 0.216 / (phi * phi * x * x * x * x * x);
  }
  if (!std::isfinite(out.err) || out.err > budget)
    throw PrecisionError("singular integral error bound exceeded");
  return out;
}

RepresentationResult representation_integral(const ShiftedCubeForm& form, const Window& w,
                                             const ArcParams& arcs, KernelKind kind,
                                             const KernelParams& kp, double r_cap) {
  arcs.validate();
  if (!(r_cap > 0) || !std::isfinite(r_cap)) throw SpecError("truncation R must be positive and finite");
  int s = form.s();
  if (s < 1) throw SpecError("form needs at least one variable");
  CosSum ker = make_kernel(kind, kp);

  // integer box (P, 2P] per variable
  Int lo = FieldReal(arcs.p).floor() + 1;
  Int hi = FieldReal(arcs.p * 2).floor();
  if (hi < lo) throw SpecError("box (P, 2P] holds no integers");
  int64_t n = to_i64(Int(hi - lo + 1));
  double total = std::pow((double)n, s);
  if (total > 2e5) throw BudgetError("representation box too large for the exact cross-check");

  RepresentationResult out;
  out.box_points = (uint64_t)llround(total);

  // exact triangle weights: sum of (eta - |F(x)-tau|) / eta over the box
  FieldReal eta = w.eta_exact, tau = w.tau_exact;
  std::vector<FieldReal> mu(s);
  for (int i = 0; i < s; ++i) mu[i] = form.shifts[i].exact();
  std::vector<int64_t> x(s, to_i64(lo));
  int64_t xlo = x[0], xhi = to_i64(hi);
  FieldReal wsum{Rat(0)};
  for (;;) {
    FieldReal dev = (eval_form(form, x) - tau).abs();
    if (dev.cmp(eta) < 0) wsum += eta - dev;
    int d = 0;
    while (d < s && ++x[d] > xhi) x[d++] = xlo;
    if (d == s) break;
  }
  out.weighted_count = wsum.div(eta).to_double();

  // double-precision cube tables for the oscillatory quadrature
  std::vector<std::vector<double>> cubes(s, std::vector<double>(n));
  double f_scale = 0;
  for (int i = 0; i < s; ++i) {
    double worst = 0;
    for (int64_t k = 0; k < n; ++k) {
      cubes[i][k] = (FieldReal(Rat(Int(lo + k))) - mu[i]).cube().to_double();
      worst = std::max(worst, std::fabs(cubes[i][k]));
    }
    f_scale += worst;
  }
  double tau_d = tau.to_double();
  f_scale += std::fabs(tau_d);

  int panels = oscillation_panels(r_cap * f_scale, 2400000);
  auto q = integrate_gk15(
      [&](double a) {
        std::complex<double> prod(1, 0);
        for (int i = 0; i < s; ++i) {
          std::complex<double> g(0, 0);
          for (int64_t k = 0; k < n; ++k) g += std::polar(1.0, 2 * M_PI * a * cubes[i][k]);
          prod *= g;
        }
        return prod * std::polar(1.0, -2 * M_PI * a * tau_d) * ker.at(a);
      },
      0.0, r_cap, panels);
  if (!std::isfinite(q.err)) throw PrecisionError("representation quadrature failure");
  out.integral = 2 * q.value.real();
  out.quad_err = 2 * q.err + 1e-10;
  out.tail_err = total * 2 * ker.decay_constant() / r_cap;
  return out;
}

DirichletVolume dirichlet_volume(int s) {
  if (s < 1) throw SpecError("dirichlet volume needs s >= 1");
  DirichletVolume out;

  mpfr_t g13, gs3, r;
  mpfr_inits2(128, g13, gs3, r, (mpfr_ptr)nullptr);
  mpfr_set_ui(g13, 1, MPFR_RNDN);
  mpfr_div_ui(g13, g13, 3, MPFR_RNDN);
  mpfr_gamma(g13, g13, MPFR_RNDN);  // Gamma(1/3)
  mpfr_set_ui(gs3, (unsigned long)s, MPFR_RNDN);
  mpfr_div_ui(gs3, gs3, 3, MPFR_RNDN);
  mpfr_gamma(gs3, gs3, MPFR_RNDN);  // Gamma(s/3)
  mpfr_pow_ui(r, g13, (unsigned long)s, MPFR_RNDN);
  mpfr_div(r, r, gs3, MPFR_RNDN);
  out.closed_form = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clears(g13, gs3, r, (mpfr_ptr)nullptr);

  // independent route: the simplex integral telescopes into the product of
  // Beta(1/3, k/3) for k = 1..s-1, each evaluated by singularity-absorbing
  // quadrature with its own error estimate (no gamma calls). Each Beta is
  // split at 1/2 so every piece is singular only at its left endpoint,
  // where tanh-sinh abscissas carry full precision.
  double est = 1, rel = 0;
  boost::math::quadrature::tanh_sinh<double> integ;
  for (int k = 1; k < s; ++k) {
    double ek = k / 3.0 - 1.0;
    double e1 = 0, e2 = 0, l1 = 0;
    double v1 = integ.integrate(
        [ek](double u) { return std::pow(std::max(u, 1e-300), -2.0 / 3.0) * std::pow(1.0 - u, ek); },
        0.0, 0.5, 1e-12, &e1, &l1);
    double v2 = integ.integrate(
        [ek](double u) { return std::pow(std::max(u, 1e-300), ek) * std::pow(1.0 - u, -2.0 / 3.0); },
        0.0, 0.5, 1e-12, &e2, &l1);
    double v = v1 + v2;
    if (!(v > 0) || !std::isfinite(v)) throw PrecisionError("beta factor quadrature failure");
    est *= v;
    rel += (std::fabs(e1) * std::fabs(v1) + std::fabs(e2) * std::fabs(v2)) / v + 1e-13;
  }
  out.estimate = est;
  out.err = est * rel;
  return out;
}

}  // namespace cubeshift
