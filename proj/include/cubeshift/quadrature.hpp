#pragma once

#include <cmath>
#include <complex>

namespace cubeshift {

// 15-point Kronrod rule with the embedded 7-point Gauss rule (the QUADPACK
// dqk15 pair). The |K15 - G7| difference is the per-panel error estimate;
// for the smooth integrands here it overestimates by orders of magnitude,
// which is the right side to err on for inequality tests.
namespace gk15 {
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace gk15

template <typename T>
struct Quad {
  T value{};
  double err = 0;
};

// Panel count for an integrand running through `cycles` full oscillations:
// four panels per cycle keeps each panel under a quarter period, where the
// K15 rule is effectively exact. Capped; the error estimate stays honest
// when the cap bites.
int oscillation_panels(double cycles, int cap);

// Fixed-panel Gauss-Kronrod integration of f over [a, b]. Deterministic:
// the panel grid and summation order are fixed by the arguments.
template <typename F, typename T = decltype(std::declval<F>()(0.0))>
Quad<T> integrate_gk15(F&& f, double a, double b, int panels) {
  if (panels < 1) panels = 1;
  Quad<T> out;
  double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h, mid = lo + h / 2, half = h / 2;
    T fc = f(mid);
    T resg = fc * gk15::wg[3];
    T resk = fc * gk15::wgk[7];
    for (int j = 0; j < 7; ++j) {
      double dx = half * gk15::xgk[j];
      T s = f(mid - dx) + f(mid + dx);
      resk = resk + s * gk15::wgk[j];
      if (j % 2 == 1) resg = resg + s * gk15::wg[j / 2];
    }
    out.value = out.value + resk * half;
    out.err += std::abs(resk - resg) * half;
  }
  return out;
}

}  // namespace cubeshift
