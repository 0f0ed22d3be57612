#pragma once

// Independent numerical oracles used by the test suite only. These deliberately
// avoid the library's own evaluation strategies: straightforward adaptive
// quadrature, Runge-Kutta integration, and bracket searches.

#include <cmath>
#include <complex>
#include <functional>
#include <utility>

namespace oracle {

using cd = std::complex<double>;

// Adaptive Simpson rule for a complex integrand along the straight segment
// [a, b] in the complex plane.
inline cd simpson_panel(const std::function<cd(cd)>& f, cd a, cd b, cd fa,
                        cd fm, cd fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline cd adaptive_simpson_rec(const std::function<cd(cd)>& f, cd a, cd b,
                               cd fa, cd fm, cd fb, cd whole, double tol,
                               int depth) {
  const cd m = (a + b) / 2.0;
  const cd lm = (a + m) / 2.0, rm = (m + b) / 2.0;
  const cd flm = f(lm), frm = f(rm);
  const cd left = simpson_panel(f, a, m, fa, flm, fm);
  const cd right = simpson_panel(f, m, b, fm, frm, fb);
  const cd delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) < 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0,
                              depth - 1);
}

inline cd integrate_segment(const std::function<cd(cd)>& f, cd a, cd b,
                            double tol = 1e-13, int max_depth = 30) {
  // pre-split into unit-length chunks so oscillations cannot fool the
  // first refinement level
  const double len = std::abs(b - a);
  const int chunks = std::max(1, (int)std::ceil(len));
  cd total = 0.0;
  for (int c = 0; c < chunks; ++c) {
    const cd ca = a + (b - a) * ((double)c / chunks);
    const cd cb = a + (b - a) * ((double)(c + 1) / chunks);
    const cd fa = f(ca), fb = f(cb), fm = f((ca + cb) / 2.0);
    const cd whole = simpson_panel(f, ca, cb, fa, fm, fb);
    total += adaptive_simpson_rec(f, ca, cb, fa, fm, fb, whole, tol / chunks,
                                  max_depth);
  }
  return total;
}

// Real-line adaptive Simpson.
inline double integrate_real(const std::function<double(double)>& f, double a,
                             double b, double tol = 1e-12) {
  auto wrap = [&](cd t) { return cd(f(t.real()), 0.0); };
  return integrate_segment(wrap, cd(a, 0.0), cd(b, 0.0), tol).real();
}

// One classic RK4 step for y'' = x y written as a first-order system.
inline std::pair<double, double> rk4_airy_step(double x, double y, double yp,
                                               double h) {
  auto f = [](double t, double a, double b) {
    return std::pair<double, double>{b, t * a};
  };
  auto [k1a, k1b] = f(x, y, yp);
  auto [k2a, k2b] = f(x + h / 2, y + h / 2 * k1a, yp + h / 2 * k1b);
  auto [k3a, k3b] = f(x + h / 2, y + h / 2 * k2a, yp + h / 2 * k2b);
  auto [k4a, k4b] = f(x + h, y + h * k3a, yp + h * k3b);
  return {y + h / 6 * (k1a + 2 * k2a + 2 * k3a + k4a),
          yp + h / 6 * (k1b + 2 * k2b + 2 * k3b + k4b)};
}

// Golden-section maximization of a unimodal function on [a, b].
inline double golden_section_max(const std::function<double(double)>& f,
                                 double a, double b, double tol = 1e-9) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace oracle
