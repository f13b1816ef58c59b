// Kernels and transforms, exponential sums on the exact grid, arc
// classification via continued fractions, oscillatory integrals.
#include <cmath>
#include <complex>
#include <random>

#include "cubeshift/circle.hpp"
#include "cubeshift/quadrature.hpp"
#include "doctest.h"

using namespace cubeshift;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("kernels share the zero-sum cosine structure") {
  KernelParams p{0.25, 0.1};
  for (auto kind : {KernelKind::K, KernelKind::Kplus, KernelKind::Kminus, KernelKind::K1,
                    KernelKind::K2plus, KernelKind::K2minus, KernelKind::Kdouble}) {
    CosSum k = make_kernel(kind, p);
    double wsum = 0;
    for (double w : k.w) wsum += w;
    CHECK(wsum == 0.0);  // exact: this is what buys the alpha^-2 decay
    // decay envelope at a few points
    for (double a : {0.5, 2.0, 17.0})
      CHECK(std::fabs(k.at(a)) <= k.decay_constant() / (a * a) * (1 + 1e-12));
    // continuity into the removable singularity
    CHECK(k.at(1e-7) == doctest::Approx(k.at_zero()).epsilon(1e-8));
  }
  CHECK_THROWS_AS((void)make_kernel(KernelKind::Kplus, KernelParams{0.25, 0.0}), SpecError);
  CHECK_THROWS_AS((void)make_kernel(KernelKind::K, KernelParams{0.0, 0.0}), SpecError);
}

TEST_CASE("window kernel evaluates to the Fejer square") {
  double eta = 0.25;
  CosSum k = make_kernel(KernelKind::K, {eta, 0});
  CHECK(k.at_zero() == doctest::Approx(eta).epsilon(1e-14));
  for (double a : {0.1, 0.3, 1.7}) {
    double s = std::sin(kPi * a * eta);
    CHECK(k.at(a) == doctest::Approx(s * s / (kPi * kPi * a * a * eta)).epsilon(1e-13));
    CHECK(k.at(a) == doctest::Approx(kernel_K(a, eta)).epsilon(1e-13));
  }
}

TEST_CASE("majorant and minorant factor into the sine product") {
  KernelParams p{0.3, 0.07};
  CosSum plus = make_kernel(KernelKind::Kplus, p);
  CosSum minus = make_kernel(KernelKind::Kminus, p);
  // value at zero is the exact limit 2 eta +- delta
  CHECK(plus.at_zero() == doctest::Approx(2 * p.eta + p.delta).epsilon(1e-14));
  CHECK(minus.at_zero() == doctest::Approx(2 * p.eta - p.delta).epsilon(1e-14));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-40.0, 40.0);
  for (int i = 0; i < 200; ++i) {
    double a = u(rng);
    if (std::fabs(a) < 1e-6) continue;
    CHECK(plus.at(a) == doctest::Approx(kernel_Kpm(a, p, +1)).epsilon(1e-12));
    CHECK(minus.at(a) == doctest::Approx(kernel_Kpm(a, p, -1)).epsilon(1e-12));
  }
}

TEST_CASE("kernel transform is the unit triangle") {
  double eta = 0.25;
  for (int i = 0; i <= 12; ++i) {
    double t = -3 * eta + 6 * eta * i / 12.0;
    FourierValue f = kernel_fourier(t, KernelKind::K, {eta, 0});
    double want = std::max(0.0, 1.0 - std::fabs(t) / eta);
    CHECK(std::fabs(f.value - want) <= 1e-6);
    CHECK(std::fabs(f.value - want) <= f.err + 1e-9);  // error bar is honest
  }
}

TEST_CASE("majorant/minorant transforms sandwich the window indicator") {
  KernelParams p{0.25, 0.05};
  for (int i = 0; i <= 20; ++i) {
    double t = -2 * 0.25 + 4 * 0.25 * i / 20.0;
    double up = kernel_fourier(t, KernelKind::Kplus, p).value;
    double dn = kernel_fourier(t, KernelKind::Kminus, p).value;
    double ind = std::fabs(t) < p.eta ? 1.0 : 0.0;
    // inside the slack band the orderings hold outright
    if (std::fabs(std::fabs(t) - p.eta) > p.delta) {
      CHECK(up >= ind - 1e-6);
      CHECK(dn <= ind + 1e-6);
      CHECK(up <= 1 + 1e-6);
      CHECK(dn >= -1e-6);
    }
  }
}

TEST_CASE("weyl sum ranges tile exactly on the grid") {
  RealSpec alpha = RealSpec::parse("1/7"), mu = RealSpec::parse("surd:0,1,2,2");
  ExpSum f1 = weyl_sum(1, alpha, mu, 40);
  ExpSum f2 = weyl_sum(2, alpha, mu, 40);
  ExpSum whole = weyl_sum(1, alpha, mu, 80);
  CHECK(whole.terms == f1.terms + f2.terms);
  CHECK(whole.re_grid == f1.re_grid + f2.re_grid);  // integer grid: bit exact
  CHECK(whole.im_grid == f1.im_grid + f2.im_grid);
}

TEST_CASE("weyl sum conjugates under alpha -> -alpha") {
  RealSpec mu = RealSpec::parse("1/3");
  ExpSum a = weyl_sum(1, RealSpec::parse("3/11"), mu, 50);
  ExpSum b = weyl_sum(1, RealSpec::parse("-3/11"), mu, 50);
  CHECK(a.re_grid == b.re_grid);
  CHECK(a.im_grid == -b.im_grid);
}

TEST_CASE("weyl sum: empty and single-point ranges") {
  RealSpec alpha = RealSpec::parse("1/3"), mu = RealSpec::parse("0");
  CHECK(weyl_sum(1, alpha, mu, 0.5).terms == 0);
  ExpSum one = weyl_sum(1, alpha, mu, 1.0);  // just x = 1
  CHECK(one.terms == 1);
  CHECK(one.value.real() == doctest::Approx(std::cos(2 * kPi / 3)).epsilon(1e-15));
}

TEST_CASE("plain weyl sum against direct summation") {
  double alpha = 5.0 / 17.0, mu = 1.0 / 3.0;
  ExpSum s = weyl_sum(1, RealSpec::parse("5/17"), RealSpec::parse("1/3"), 30);
  std::complex<double> direct(0, 0);
  for (int x = 1; x <= 30; ++x) {
    double ph = alpha * std::pow(x - mu, 3);
    ph -= std::floor(ph);
    direct += std::complex<double>(std::cos(2 * kPi * ph), std::sin(2 * kPi * ph));
  }
  CHECK(std::abs(s.value - direct) < 1e-9);
}

TEST_CASE("differenced sums expand the difference polynomial exactly") {
  CubicPolynomial h{RealSpec::parse("1"), RealSpec::parse("-2"), RealSpec::parse("1/2"),
                    RealSpec::parse("0")};
  RealSpec alpha = RealSpec::parse("2/9");
  int64_t hstep = 3, lo = 0, hi = 25;
  ExpSum s = differenced_weyl_sum(h, alpha, hstep, lo, hi);
  CHECK(s.terms == (uint64_t)(hi - lo));
  // direct: e(alpha (h(x+h) - h(x))) termwise with exact rational phases
  std::complex<double> direct(0, 0);
  FieldReal a = alpha.exact();
  for (int64_t x = lo + 1; x <= hi; ++x) {
    FieldReal diff = h.eval_int(x + hstep) - h.eval_int(x);
    Rat ph = (a * diff).as_rational();
    double frac = ph.get_d() - std::floor(ph.get_d());
    direct += std::complex<double>(std::cos(2 * kPi * frac), std::sin(2 * kPi * frac));
  }
  CHECK(std::abs(s.value - direct) < 1e-9);
}

TEST_CASE("aggregated differenced sum is the h-sum of its pieces") {
  CubicPolynomial h{RealSpec::parse("2"), RealSpec::parse("0"), RealSpec::parse("-1"),
                    RealSpec::parse("3")};
  RealSpec alpha = RealSpec::parse("surd:0,1,5,9");
  ExpSum total = aggregated_differenced_sum(h, alpha, 4, 0, 20);
  __int128 re = 0, im = 0;
  for (int64_t step = 1; step <= 4; ++step) {
    ExpSum part = differenced_weyl_sum(h, alpha, step, 0, 20);
    re += part.re_grid;
    im += part.im_grid;
  }
  CHECK(total.re_grid == re);
  CHECK(total.im_grid == im);
}

TEST_CASE("complete exponential sums: exact rational phases") {
  // all phases zero: the sum is q itself
  ExpSum trivial = complete_exp_sum(6, 0, 0, 0);
  CHECK(trivial.value.real() == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(trivial.value.imag() == 0.0);

  // q = 5: cubing permutes residues, so the pure cubic sum collapses
  ExpSum p5 = complete_exp_sum(5, 0, 0, 1);
  CHECK(std::abs(p5.value) < 1e-12);

  // q = 7: cubes land on {0,1,6} with multiplicity 3; S = 1 + 6 cos(2 pi/7)
  ExpSum p7 = complete_exp_sum(7, 0, 0, 1);
  CHECK(p7.value.real() == doctest::Approx(1 + 6 * std::cos(2 * kPi / 7)).epsilon(1e-12));
  CHECK(std::abs(p7.value.imag()) < 1e-12);
}

TEST_CASE("dirichlet approximation from the exact continued fraction") {
  // pi as a 30-digit declared-irrational decimal
  RealSpec pi = RealSpec::parse("dec:3.14159265358979323846264338328!irr");
  RationalApprox r = dirichlet_approx(pi.exact(), Rat(10));
  CHECK(r.a == 22);
  CHECK(r.q == 7);
  CHECK(r.err == doctest::Approx(0.008851).epsilon(1e-3));

  RationalApprox r2 = dirichlet_approx(pi.exact(), Rat(10000));
  CHECK(r2.a == 355);
  CHECK(r2.q == 113);

  // quadratic surd: the expansion is periodic and the walk stays exact
  RationalApprox s = dirichlet_approx(FieldReal::surd(Rat(1), 2), Rat(10000));
  CHECK(s.a == 8119);
  CHECK(s.q == 5741);
  CHECK(s.err < 1e-4);
  CHECK(s.err * 10000 < 1.0);  // |q alpha - a| < 1/Q certified

  // exact rationals terminate with zero error
  RationalApprox t = dirichlet_approx(FieldReal(Rat(3, 7)), Rat(100));
  CHECK(t.a == 3);
  CHECK(t.q == 7);
  CHECK(t.err == 0.0);
}

TEST_CASE("arc classification decides boundaries exactly") {
  ArcParams arcs{Rat(64), Rat(1, 2), Rat(10)};
  // P^(xi-3) = 64^(-5/2) = 2^-15: the boundary belongs to the major arc
  FieldReal boundary(Rat(1, 32768));
  CHECK(classify_arc(boundary, arcs) == ArcClass::Major);
  CHECK(classify_arc(FieldReal(Rat(1, 32767)), arcs) == ArcClass::Minor);
  CHECK(classify_arc(FieldReal(Rat(10)), arcs) == ArcClass::Minor);  // |a| = T
  CHECK(classify_arc(FieldReal(Rat(10)) + FieldReal(Rat(1, 1000000)), arcs) ==
        ArcClass::Trivial);
  CHECK(classify_arc(-boundary, arcs) == ArcClass::Major);

  // parameter domain is validated, not clamped
  ArcParams bad_p{Rat(1), Rat(1, 2), Rat(1)};
  CHECK_THROWS_AS(bad_p.validate(), SpecError);
  ArcParams bad_xi{Rat(4), Rat(3, 2), Rat(1)};
  CHECK_THROWS_AS(bad_xi.validate(), SpecError);
}

TEST_CASE("classical major arcs catch rationals and miss badly approximable") {
  // 3/7 + 10^-6: q = 7 approximates within P^(-3/2) at P = 100
  FieldReal near = FieldReal(Rat(3, 7)) + FieldReal(Rat(1, 1000000));
  ClassicalMembership m = classify_classical(near, 100);
  CHECK(m.in_major);
  CHECK(m.q == 7);
  CHECK(m.a == 3);

  // the golden ratio resists: |q phi - p| ~ 1/(sqrt5 q) > 100^(-3/2) for q <= 100
  FieldReal golden = (FieldReal(1L) + FieldReal::surd(Rat(1), 5)).scaled(Rat(1, 2));
  CHECK_FALSE(classify_classical(golden, 100).in_major);
}

TEST_CASE("oscillatory cube integral: both branches, certified error") {
  // alpha = 0 integrates the constant 1
  CHECK(singular_integral(0.0, 7.0).value.real() == doctest::Approx(7.0));

  // conjugate symmetry is exact by construction
  ComplexQuad a = singular_integral(0.37, 2.0);
  ComplexQuad b = singular_integral(-0.37, 2.0);
  CHECK(a.value.real() == b.value.real());
  CHECK(a.value.imag() == -b.value.imag());

  // quadrature branch vs a 2-term integration by parts done by hand here:
  // I = [e(alpha g^3) (1/(3 i phi g^2) - 2/(9 phi^2 g^5))]_X^2X + R,
  // |R| <= (10/9) phi^-2 * integral of g^-6 = 0.2152.. / (phi^2 X^5)
  double alpha = 0.9, x = 11.0;  // phi X^3 ~ 7.5e3: still quadrature
  double phi = 2 * kPi * alpha;
  auto endpoint = [&](double g) {
    std::complex<double> e(std::cos(phi * g * g * g), std::sin(phi * g * g * g));
    std::complex<double> lead(0.0, -1.0 / (3 * phi * g * g));
    double second = -2.0 / (9 * phi * phi * std::pow(g, 5));
    return e * (lead + second);
  };
  ComplexQuad q = singular_integral(alpha, x);
  std::complex<double> ibp = endpoint(2 * x) - endpoint(x);
  double rem = 0.2153 / (phi * phi * std::pow(x, 5));
  CHECK(std::abs(q.value - ibp) <= rem + q.err + 1e-12);

  // high-phase branch obeys the alpha^-1 X^-2 envelope
  ComplexQuad h = singular_integral(3.0, 25.0);
  double hphi = 2 * kPi * 3.0;
  CHECK(std::abs(h.value) <= 0.75 / (hphi * 25.0 * 25.0));
  CHECK(h.err <= 1e-9 * 25.0);
}

TEST_CASE("representation integral converges to the weighted count") {
  // s = 2, integers 5..8: 216 + 216 = 432 is an exact hit
  ShiftedCubeForm f = ShiftedCubeForm::from_strings({"0", "0"});
  Window w(RealSpec::parse("432"), RealSpec::parse("1/2"));
  ArcParams arcs{Rat(4), Rat(1, 2), Rat(1)};
  RepresentationResult r =
      representation_integral(f, w, arcs, KernelKind::K, {0.5, 0}, 96.0);
  CHECK(r.box_points == 16);
  CHECK(r.weighted_count == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(r.integral - r.weighted_count) <= r.tail_err + r.quad_err);

  // no representations: the integral shrinks into its own error bar
  Window w0(RealSpec::parse("600"), RealSpec::parse("1/2"));
  RepresentationResult r0 =
      representation_integral(f, w0, arcs, KernelKind::K, {0.5, 0}, 96.0);
  CHECK(r0.weighted_count == 0.0);
  CHECK(std::fabs(r0.integral) <= r0.tail_err + r0.quad_err);
}

TEST_CASE("dirichlet volume: closed gamma form against the beta product") {
  DirichletVolume v2 = dirichlet_volume(2);
  CHECK(v2.closed_form == doctest::Approx(5.2999162509).epsilon(1e-6));
  DirichletVolume v3 = dirichlet_volume(3);
  CHECK(v3.closed_form == doctest::Approx(19.2259694526).epsilon(1e-6));
  DirichletVolume v5 = dirichlet_volume(5);
  CHECK(v5.closed_form == doctest::Approx(152.8440419104).epsilon(1e-6));
  for (auto& v : {v2, v3, v5})
    CHECK(std::fabs(v.closed_form - v.estimate) <= v.err + 1e-9);
  CHECK(dirichlet_volume(1).estimate == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("oscillation panel policy is monotone and capped") {
  CHECK(oscillation_panels(0, 1000) == 16);
  CHECK(oscillation_panels(10, 1000) == 56);
  CHECK(oscillation_panels(1e9, 2400) == 2400);
  CHECK_THROWS_AS((void)oscillation_panels(-1, 100), SpecError);
}
