// One-dimensional quadrature used on the offset axis: fixed-order
// Gauss-Legendre for smooth integrands, midpoint subdivision for step
// integrands, and an exact scan+bisect integrator for piecewise-constant
// functions whose jumps must be located from point evaluations alone.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace cwold {

// 16-point Gauss-Legendre nodes/weights on [-1,1] (symmetric halves).
struct GL16 {
  static constexpr std::array<double, 8> x = {
      0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
      0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
      0.94457502307323258, 0.98940093499164993};
  static constexpr std::array<double, 8> w = {
      0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
      0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
      0.06225352393864789, 0.02715245941175409};
};

template <class F>
double gl16(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < 8; ++i)
    s += GL16::w[i] * (f(c + r * GL16::x[i]) + f(c - r * GL16::x[i]));
  return s * r;
}

// Midpoint rule with subinterval width <= `width` (at least one interval).
template <class F>
double midpoint(F&& f, double a, double b, double width) {
  const double len = std::fabs(b - a);
  int n = width > 0.0 ? static_cast<int>(std::ceil(len / width)) : 1;
  if (n < 1) n = 1;
  const double step = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * step);
  return s * step;
}

// Exact integral of a piecewise-constant f over [a,b] (a <= b), assuming at
// most one jump inside each of `cells` scan subintervals. Jumps are located
// by bisection on f itself, so only point queries are used. Suitable for
// half-space masses of discrete measures along an offset axis.
template <class F>
double integrate_step_exact(F&& f, double a, double b, int cells = 2048) {
  if (a == b) return 0.0;
  const double step = (b - a) / cells;
  double s = 0.0;
  double lo = a, flo = f(a);
  for (int i = 0; i < cells; ++i) {
    const double hi = (i + 1 == cells) ? b : a + (i + 1) * step;
    const double fhi = f(hi);
    if (flo == fhi) {
      s += flo * (hi - lo);
    } else {
      double u = lo, v = hi;  // invariant: f(u) == flo, f(v) == fhi
      for (int it = 0; it < 100 && v - u > 0.0; ++it) {
        const double mid = 0.5 * (u + v);
        if (mid == u || mid == v) break;
        if (f(mid) == flo) u = mid; else v = mid;
      }
      s += flo * (u - lo) + fhi * (hi - v) + 0.5 * (flo + fhi) * (v - u);
    }
    lo = hi;
    flo = fhi;
  }
  return s;
}

}  // namespace cwold
