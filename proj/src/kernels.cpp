#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <cmath>

#include "cubeshift/circle.hpp"
#include "cubeshift/quadrature.hpp"

namespace cubeshift {

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "K") return KernelKind::K;
  if (name == "Kplus" || name == "K+") return KernelKind::Kplus;
  if (name == "Kminus" || name == "K-") return KernelKind::Kminus;
  if (name == "K1") return KernelKind::K1;
  if (name == "K2plus" || name == "K2+") return KernelKind::K2plus;
  if (name == "K2minus" || name == "K2-") return KernelKind::K2minus;
  if (name == "Kdouble" || name == "K2alpha") return KernelKind::Kdouble;
  throw SpecError("unknown kernel kind: " + name);
}

std::string kernel_kind_name(KernelKind k) {
  switch (k) {
    case KernelKind::K: return "K";
    case KernelKind::Kplus: return "Kplus";
    case KernelKind::Kminus: return "Kminus";
    case KernelKind::K1: return "K1";
    case KernelKind::K2plus: return "K2plus";
    case KernelKind::K2minus: return "K2minus";
    case KernelKind::Kdouble: return "Kdouble";
  }
  return "?";
}

double CosSum::at(double alpha) const {
  if (alpha == 0) return at_zero();
  // zero-sum trick: sum w_j cos(2 pi c_j a) = sum w_j (cos(..) - 1), stable
  double num = 0;
  for (size_t j = 0; j < w.size(); ++j) {
    double s = std::sin(M_PI * c[j] * alpha);
    num -= 2 * w[j] * s * s;
  }
  return num / (a * alpha * alpha);
}

double CosSum::at_zero() const {
  double acc = 0;
  for (size_t j = 0; j < w.size(); ++j) acc += w[j] * c[j] * c[j];
  return -2 * M_PI * M_PI * acc / a;
}

double CosSum::decay_constant() const {
  double sw = 0;
  for (double x : w) sw += std::fabs(x);
  return 2 * sw / a;
}

double CosSum::min_positive_freq() const {
  double m = 0;
  for (double x : c)
    if (x > 0 && (m == 0 || x < m)) m = x;
  return m;
}

CosSum make_kernel(KernelKind kind, const KernelParams& p) {
  if (!(p.eta > 0)) throw SpecError("kernel needs eta > 0");
  bool needs_delta = kind != KernelKind::K && kind != KernelKind::Kdouble;
  if (needs_delta && !(p.delta > 0 && p.delta < 2 * p.eta))
    throw SpecError("kernel needs 0 < delta < 2*eta");
  double pi2 = M_PI * M_PI;
  switch (kind) {
    case KernelKind::K:
      return {{1, -1}, {0, p.eta}, 2 * pi2 * p.eta};
    case KernelKind::Kdouble:  // K(2 alpha)
      return {{1, -1}, {0, 2 * p.eta}, 8 * pi2 * p.eta};
    case KernelKind::Kplus:
      return {{1, -1}, {p.eta, p.eta + p.delta}, 2 * pi2 * p.delta};
    case KernelKind::Kminus:
      return {{1, -1}, {p.eta - p.delta, p.eta}, 2 * pi2 * p.delta};
    case KernelKind::K1:
      return {{1, -1}, {0, p.delta}, 2 * pi2 * p.delta * p.delta};
    case KernelKind::K2plus:
      return {{1, -1}, {0, 2 * p.eta + p.delta}, 2 * pi2};
    case KernelKind::K2minus:
      return {{1, -1}, {0, 2 * p.eta - p.delta}, 2 * pi2};
  }
  throw SpecError("unreachable kernel kind");
}

double kernel_K(double alpha, double eta) {
  if (!(eta > 0)) throw SpecError("kernel needs eta > 0");
  if (alpha == 0) return eta;
  double s = std::sin(M_PI * alpha * eta);
  return s * s / (M_PI * M_PI * alpha * alpha * eta);
}

double kernel_Kpm(double alpha, const KernelParams& p, int sign) {
  if (!(p.eta > 0 && p.delta > 0 && p.delta < 2 * p.eta))
    throw SpecError("kernel needs 0 < delta < 2*eta");
  double b = 2 * p.eta + sign * p.delta;
  if (alpha == 0) return b;  // removable singularity, exact limit
  return std::sin(M_PI * alpha * p.delta) * std::sin(M_PI * alpha * b) /
         (M_PI * M_PI * alpha * alpha * p.delta);
}

namespace {

// integral from R to infinity of cos(2 pi c x) / x^2 dx, closed form via Si
double cos_tail(double c, double r, double& err) {
  if (c == 0) return 1.0 / r;
  double k = 2 * M_PI * c;
  gsl_sf_result si;
  if (gsl_sf_Si_e(k * r, &si) != 0) throw SpecError("Si evaluation failed");
  err += k * (si.err + 1e-16);
  return std::cos(k * r) / r - k * (M_PI_2 - si.val);
}

}  // namespace

FourierValue kernel_fourier(double t, KernelKind kind, const KernelParams& p) {
  CosSum cs = make_kernel(kind, p);
  double tt = std::fabs(t);
  double cmin = cs.min_positive_freq();
  double r = std::clamp(32.0 / cmin, 8.0, 1e4);
  double cmax = *std::max_element(cs.c.begin(), cs.c.end());

  auto g = [&](double alpha) { return std::cos(2 * M_PI * tt * alpha) * cs.at(alpha); };
  int panels = oscillation_panels(r * (tt + cmax), 60000);
  auto q = integrate_gk15(g, 0.0, r, panels);

  double tail = 0, tail_err = 0;
  for (size_t j = 0; j < cs.w.size(); ++j) {
    double e1 = 0, e2 = 0;
    double f1 = cos_tail(cs.c[j] + tt, r, e1);
    double f2 = cos_tail(std::fabs(cs.c[j] - tt), r, e2);
    tail += cs.w[j] / cs.a * 0.5 * (f1 + f2);
    tail_err += std::fabs(cs.w[j] / cs.a) * 0.5 * (e1 + e2);
  }

  FourierValue out;
  out.value = 2 * (q.value + tail);
  out.err = 2 * (q.err + tail_err) + 1e-12;
  return out;
}

}  // namespace cubeshift
