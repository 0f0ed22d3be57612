#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "model.hpp"

// Special functions: the exponential Fresnel integral F(Z) = int_0^Z e^{it^2} dt
// (complex argument), its real cosine/sine parts, the Airy function Ai with
// derivative, and the negative zeros of Ai.
//
// Accuracy targets: F to 1e-10 relative for |Z| <= 10 on the real axis and in
// the sector |arg Z| <= pi/4; Ai to 1e-10 relative on [-15, 10]. Both are met
// with margin by evaluating the series branches in long double.

namespace gravidiff {

struct AiryValue {
  double value;
  double derivative;
};

namespace detail {

using cld = std::complex<long double>;

inline constexpr long double kSqrtPi = 1.77245385090551602730L;
// limit of the Fresnel integral along the positive real axis, sqrt(pi/8)
inline constexpr long double kFresnelLimit = 0.62665706865775012560L;
inline constexpr long double kAiryC1 = 0.35502805388781723926L;   // Ai(0)
inline constexpr long double kAiryC2 = 0.25881940379280679840L;   // -Ai'(0)

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes, generated once by Newton iteration on P_n.

template <int N>
struct GaussLegendre {
  std::array<long double, N> x{}, w{};
};

template <int N>
inline const GaussLegendre<N>& gauss_legendre() {
  static const GaussLegendre<N> table = [] {
    GaussLegendre<N> t;
    for (int i = 0; i < N; ++i) {
      long double xi = std::cos(3.14159265358979323846L * (i + 0.75L) / (N + 0.5L));
      for (int it = 0; it < 64; ++it) {
        // Legendre recurrence for P_N and its derivative at xi
        long double p0 = 1.0L, p1 = xi;
        for (int n = 2; n <= N; ++n) {
          long double p2 = ((2 * n - 1) * xi * p1 - (n - 1) * p0) / n;
          p0 = p1;
          p1 = p2;
        }
        long double dp = N * (xi * p1 - p0) / (xi * xi - 1.0L);
        long double step = p1 / dp;
        xi -= step;
        if (std::fabs(step) < 1e-19L) break;
      }
      long double p0 = 1.0L, p1 = xi;
      for (int n = 2; n <= N; ++n) {
        long double p2 = ((2 * n - 1) * xi * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      long double dp = N * (xi * p1 - p0) / (xi * xi - 1.0L);
      t.x[i] = xi;
      t.w[i] = 2.0L / ((1.0L - xi * xi) * dp * dp);
    }
    return t;
  }();
  return table;
}

// ---------------------------------------------------------------------------
// Fresnel integral branches

// Maclaurin sum, reliable for |Z| <= 2.5 (worst-case cancellation there costs
// under two digits, absorbed by the long double accumulator).
inline cld fresnel_series(cld Z) {
  const cld iZ2 = cld(0.0L, 1.0L) * Z * Z;
  cld term = Z;
  cld sum = Z;
  for (int n = 0; n < 90; ++n) {
    term *= iZ2 * (long double)(2 * n + 1) /
            ((long double)(n + 1) * (long double)(2 * n + 3));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  return sum;
}

// Large-|Z| expansion, F = sqrt(pi/8)(1+i) - e^{iZ^2} sum_m c_m Z^{-2m-1},
// c_0 = i/2, c_{m+1} = c_m (2m+1)/(2i). Used for |Z| >= 5.5.
inline cld fresnel_asymptotic(cld Z) {
  const cld inv2 = 1.0L / (Z * Z);
  cld c = cld(0.0L, 0.5L);
  cld term = c / Z;
  cld sum = term;
  long double prev = std::abs(term);
  for (int m = 0; m < 40; ++m) {
    c *= (long double)(2 * m + 1) / cld(0.0L, 2.0L);
    cld next = c / Z;
    for (int j = 0; j <= m; ++j) next *= inv2;  // c_{m+1} / Z^{2m+3}
    long double mag = std::abs(next);
    if (mag > prev) break;  // divergent tail reached
    sum += next;
    if (mag < 1e-21L * std::abs(sum)) break;
    prev = mag;
  }
  const cld limit = kFresnelLimit * cld(1.0L, 1.0L);
  return limit - std::exp(cld(0.0L, 1.0L) * Z * Z) * sum;
}

// Bridge for 2.5 < |Z| < 5.5: series value at the pivot 2.5 Z/|Z| plus a
// Gauss-Legendre pass over the remaining straight segment (the integrand is
// entire, so the path choice is free).
inline cld fresnel_midrange(cld Z) {
  const cld P = Z * (2.5L / std::abs(Z));
  const auto& gl = gauss_legendre<40>();
  const cld half = (Z - P) * 0.5L;
  const cld mid = (Z + P) * 0.5L;
  cld acc = 0.0L;
  for (int i = 0; i < 40; ++i) {
    const cld t = mid + half * gl.x[i];
    acc += gl.w[i] * std::exp(cld(0.0L, 1.0L) * t * t);
  }
  return fresnel_series(P) + half * acc;
}

inline cld fresnel_dispatch(cld Z) {
  const long double r = std::abs(Z);
  if (r == 0.0L) return cld(0.0L, 0.0L);
  if (Z.real() < 0.0L || (Z.real() == 0.0L && Z.imag() < 0.0L))
    return -fresnel_dispatch(-Z);  // odd integrand
  if (r <= 2.5L) return fresnel_series(Z);
  if (r >= 5.5L) return fresnel_asymptotic(Z);
  return fresnel_midrange(Z);
}

}  // namespace detail

// F(Z) = int_0^Z exp(i t^2) dt for complex Z.
inline std::complex<double> fresnel_F(std::complex<double> Z) {
  const auto v = detail::fresnel_dispatch(detail::cld(Z.real(), Z.imag()));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

// The two real Fresnel integrals (C, S) = (int cos t^2, int sin t^2).
inline std::pair<double, double> fresnel_CS(double x) {
  const long double ax = std::fabs(x);
  if (ax <= 2.5L) {
    // dedicated real-arithmetic series; cross-checked against fresnel_F
    const long double x2 = (long double)x * x;
    const long double x4 = x2 * x2;
    long double tc = x, sc = x;
    long double ts = x * x2 / 3.0L, ss = ts;
    for (int n = 0; n < 60; ++n) {
      tc *= -x4 * (long double)(4 * n + 1) /
            ((long double)(2 * n + 1) * (2 * n + 2) * (4 * n + 5));
      sc += tc;
      ts *= -x4 * (long double)(4 * n + 3) /
            ((long double)(2 * n + 2) * (2 * n + 3) * (4 * n + 7));
      ss += ts;
      if (std::fabs(tc) < 1e-21L * std::fabs(sc) &&
          std::fabs(ts) < 1e-21L * std::fabs(ss))
        break;
    }
    return {static_cast<double>(sc), static_cast<double>(ss)};
  }
  const auto f = fresnel_F({x, 0.0});
  return {f.real(), f.imag()};
}

namespace detail {

// ---------------------------------------------------------------------------
// Airy function machinery.
//
// Layout: Maclaurin disk |x| <= 4.5 (long double), a knot table on [-16, 14]
// at spacing 1/4 built once by Taylor-stepping the ODE y'' = xy downward from
// x = 30 (the recessive direction for the growing companion solution, so the
// march is stable), and the standard large-|x| expansions outside. Knot
// queries take one Taylor step of at most 1/8.

struct AiryPairL {
  long double ai, aip;
};

inline AiryPairL airy_maclaurin(long double x) {
  if (x == 0.0L) return {kAiryC1, -kAiryC2};
  const long double x3 = x * x * x;
  // u = 1 + x^3/6 + ..., v = x + x^4/12 + ...; Ai = c1 u - c2 v
  long double tu = 1.0L, u = 1.0L, du = 0.0L;
  long double tv = x, v = x, dv = 1.0L;
  for (int k = 0; k < 60; ++k) {
    tu *= x3 / ((long double)(3 * k + 3) * (3 * k + 2));
    u += tu;
    du += tu * (3 * k + 3) / x;
    tv *= x3 / ((long double)(3 * k + 4) * (3 * k + 3));
    v += tv;
    dv += tv * (3 * k + 4) / x;
    if (std::fabs(tu) < 1e-22L * std::fabs(u) &&
        std::fabs(tv) < 1e-22L * std::fabs(v))
      break;
  }
  return {kAiryC1 * u - kAiryC2 * v, kAiryC1 * du - kAiryC2 * dv};
}

// Coefficients u_k (and companions v_k) of the large-|x| expansions.
template <int N = 26>
inline const std::array<long double, N>& airy_u_coeffs() {
  static const std::array<long double, N> u = [] {
    std::array<long double, N> c{};
    c[0] = 1.0L;
    for (int k = 1; k < N; ++k)
      c[k] = c[k - 1] * (6 * k - 5) * (long double)(6 * k - 3) * (6 * k - 1) /
             (216.0L * k * (2 * k - 1));
    return c;
  }();
  return u;
}

template <int N = 26>
inline const std::array<long double, N>& airy_v_coeffs() {
  static const std::array<long double, N> v = [] {
    std::array<long double, N> c{};
    const auto& u = airy_u_coeffs<N>();
    c[0] = 1.0L;
    for (int k = 1; k < N; ++k) c[k] = u[k] * (6 * k + 1) / (1.0L - 6 * k);
    return c;
  }();
  return v;
}

// Decaying-side expansion, x >> 1: Ai = e^{-zeta} s(zeta) / (2 sqrt(pi) x^{1/4}).
inline AiryPairL airy_asymptotic_pos(long double x) {
  const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
  const auto& u = airy_u_coeffs<>();
  const auto& v = airy_v_coeffs<>();
  long double s = 0.0L, sp = 0.0L, pw = 1.0L, prev = 1e30L;
  for (int k = 0; k < (int)u.size(); ++k) {
    const long double tu = u[k] * pw;
    if (std::fabs(tu) > prev) break;
    prev = std::fabs(tu);
    s += (k % 2 ? -tu : tu);
    sp += (k % 2 ? -v[k] * pw : v[k] * pw);
    pw /= zeta;
    if (std::fabs(tu) < 1e-22L) break;
  }
  const long double q = std::pow(x, 0.25L);
  const long double e = std::exp(-zeta) / (2.0L * kSqrtPi);
  return {e * s / q, -e * q * sp};
}

// Oscillatory-side expansion, x << -1.
inline AiryPairL airy_asymptotic_neg(long double x) {
  const long double t = -x;
  const long double zeta = 2.0L / 3.0L * t * std::sqrt(t);
  const auto& u = airy_u_coeffs<>();
  const auto& v = airy_v_coeffs<>();
  long double P = 0.0L, Q = 0.0L, R = 0.0L, S = 0.0L;
  long double pw = 1.0L;
  for (int k = 0; k + 1 < (int)u.size(); k += 2) {
    const int half = k / 2;
    const long double sgn = (half % 2 ? -1.0L : 1.0L);
    P += sgn * u[k] * pw;
    R += sgn * v[k] * pw;
    Q += sgn * u[k + 1] * pw / zeta;
    S += sgn * v[k + 1] * pw / zeta;
    pw /= zeta * zeta;
    if (u[k] * pw < 1e-22L) break;
  }
  const long double ph = zeta - 0.78539816339744830962L;
  const long double c = std::cos(ph), s = std::sin(ph);
  const long double q = std::pow(t, 0.25L);
  return {(c * P + s * Q) / (kSqrtPi * q), (s * R - c * S) * q / kSqrtPi};
}

// One Taylor step of y'' = xy from (x0, y, y') by h; nmax terms.
inline AiryPairL airy_taylor_step(long double x0, AiryPairL f, long double h,
                                  int nmax) {
  // c[n] are the Taylor coefficients of the solution about x0
  long double c0 = f.ai, c1 = f.aip, c2 = x0 * f.ai / 2.0L;
  long double y = c0 + h * (c1 + h * c2);
  long double dy = c1 + 2.0L * h * c2;
  long double cm1 = c0, cm0 = c1, cp = c2;  // c_{n-1}, c_n, c_{n+1}
  long double hp = h * h;                   // h^{n+1} at loop entry
  long double prev_mag = 1e30L;
  for (int n = 1; n + 2 <= nmax; ++n) {
    const long double cnew = (x0 * cm0 + cm1) / ((long double)(n + 1) * (n + 2));
    dy += cnew * (n + 2) * hp;
    hp *= h;
    y += cnew * hp;
    cm1 = cm0;
    cm0 = cp;
    cp = cnew;
    // oscillatory-side coefficients pass through zero, so insist on two
    // consecutive negligible terms before truncating
    const long double mag = std::fabs(cnew * hp);
    if (n > 6 && mag < 1e-24L * std::fabs(y) && prev_mag < 1e-24L * std::fabs(y))
      break;
    prev_mag = mag;
  }
  return {y, dy};
}

struct AiryKnotTable {
  static constexpr long double x_lo = -16.0L;
  static constexpr long double x_hi = 14.0L;
  static constexpr long double step = 0.25L;
  static constexpr int count = 121;
  std::array<long double, count> ai{}, aip{};
};

inline const AiryKnotTable& airy_knots() {
  static const AiryKnotTable table = [] {
    AiryKnotTable t;
    long double x = 30.0L;
    AiryPairL f = airy_asymptotic_pos(x);
    while (x > AiryKnotTable::x_lo - 0.1L) {
      if (x <= AiryKnotTable::x_hi + 1e-9L) {
        const int k = (int)std::llround((x - AiryKnotTable::x_lo) /
                                        AiryKnotTable::step);
        if (k >= 0 && k < AiryKnotTable::count) {
          t.ai[k] = f.ai;
          t.aip[k] = f.aip;
        }
      }
      f = airy_taylor_step(x, f, -AiryKnotTable::step, 42);
      x -= AiryKnotTable::step;
    }
    return t;
  }();
  return table;
}

inline AiryPairL airy_dispatch(long double x) {
  if (std::fabs(x) <= 4.5L) return airy_maclaurin(x);
  if (x > AiryKnotTable::x_hi) return airy_asymptotic_pos(x);
  if (x < AiryKnotTable::x_lo) return airy_asymptotic_neg(x);
  const auto& t = airy_knots();
  int k = (int)std::llround((x - AiryKnotTable::x_lo) / AiryKnotTable::step);
  if (k < 0) k = 0;
  if (k >= AiryKnotTable::count) k = AiryKnotTable::count - 1;
  const long double xk = AiryKnotTable::x_lo + k * AiryKnotTable::step;
  return airy_taylor_step(xk, {t.ai[k], t.aip[k]}, x - xk, 30);
}

}  // namespace detail

// Ai(x) and Ai'(x).
inline AiryValue airy_Ai(double x) {
  const auto v = detail::airy_dispatch((long double)x);
  return {static_cast<double>(v.ai), static_cast<double>(v.aip)};
}

// n-th negative zero of Ai (n >= 1), to well below 1e-9.
inline double airy_zero(int n) {
  if (n < 1) throw DomainError("airy_zero requires n >= 1");
  const double t = 3.0 * 3.14159265358979323846 * (4 * n - 1) / 8.0;
  const double t2 = t * t;
  double x = -std::pow(t, 2.0 / 3.0) *
             (1.0 + 5.0 / (48.0 * t2) - 5.0 / (36.0 * t2 * t2));
  for (int it = 0; it < 6; ++it) {
    const auto a = airy_Ai(x);
    const double step = a.value / a.derivative;
    x -= step;
    if (std::fabs(step) < 1e-14 * std::fabs(x)) break;
  }
  return x;
}

namespace detail {

// ---------------------------------------------------------------------------
// Complex-argument helpers for the diffraction kernel. Arguments stay within
// a narrow band around the real axis (they come from a slightly rotated
// integration path), so a short vertical Taylor expansion seeded by the real
// evaluation suffices in the central window; outside it the large-argument
// expansions accept complex input directly.

using cd = std::complex<double>;

// Ai at w = x + iy with |y| small, via derivatives from the ODE:
// Ai'' = x Ai, Ai''' = Ai + x Ai', Ai'''' = 2 Ai' + x^2 Ai, ...
inline cd airy_near_real(cd w) {
  // Anchor on the accurately known real-axis value and run the Taylor
  // coefficient recurrence of y'' = x y in the purely imaginary offset.
  // The solution is entire, so the series converges for any offset; with
  // |Im w| <= 0.5 roughly twenty terms reach machine precision.
  const double x0 = w.real();
  const auto f = airy_Ai(x0);
  const cd h(0.0, w.imag());
  double cm1 = 0.0, c0 = f.value, c1 = f.derivative;
  cd acc = c0 + c1 * h;
  cd hp = h;
  for (int n = 0; n < 48; ++n) {
    const double c2 = (x0 * c0 + cm1) / ((n + 1.0) * (n + 2.0));
    hp *= h;
    const cd term = c2 * hp;
    acc += term;
    if (n > 6 && std::abs(term) < 1e-18 * std::abs(acc)) break;
    cm1 = c0;
    c0 = c1;
    c1 = c2;
  }
  return acc;
}

// Scaled decaying-side value for Re w large: Ai(w) = mantissa * exp(-zeta),
// zeta = (2/3) w^{3/2}scaled separately so that ratios of two such values can
// be formed without under/overflow.
struct ScaledAiry {
  cd mantissa;
  cd zeta;
};

inline ScaledAiry airy_scaled_pos_complex(cd w) {
  const cd zeta = 2.0 / 3.0 * std::pow(w, 1.5);
  const auto& u = airy_u_coeffs<>();
  cd s = 0.0;
  cd pw = 1.0;
  double prev = 1e30;
  for (int k = 0; k < (int)u.size(); ++k) {
    const cd term = (double)u[k] * pw;
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    s += (k % 2 ? -term : term);
    pw /= zeta;
    if (std::abs(term) < 1e-18) break;
  }
  return {s / (2.0 * (double)kSqrtPi * std::pow(w, 0.25)), zeta};
}

// Oscillatory-side value for Re w <= -16, complex w. Written in terms of
// t = -w with Re t large positive.
inline cd airy_osc_complex(cd w) {
  const cd t = -w;
  const cd zeta = 2.0 / 3.0 * std::pow(t, 1.5);
  const auto& u = airy_u_coeffs<>();
  cd P = 0.0, Q = 0.0, pw = 1.0;
  for (int k = 0; k + 1 < (int)u.size(); k += 2) {
    const int half = k / 2;
    const double sgn = (half % 2 ? -1.0 : 1.0);
    P += sgn * (double)u[k] * pw;
    Q += sgn * (double)u[k + 1] * pw / zeta;
    pw /= zeta * zeta;
    if ((double)u[k] * std::abs(pw) < 1e-18) break;
  }
  const cd ph = zeta - 0.78539816339744830962;
  return (std::cos(ph) * P + std::sin(ph) * Q) /
         ((double)kSqrtPi * std::pow(t, 0.25));
}

// General complex Ai value for band-limited imaginary parts. For deep
// decaying arguments prefer the scaled ratio path instead (this one returns
// the plain value and underflows past Re w ~ 100).
inline cd airy_value_complex(cd w) {
  if (w.real() > 16.5) {
    const auto s = airy_scaled_pos_complex(w);
    return s.mantissa * std::exp(-s.zeta);
  }
  if (w.real() < -16.5) return airy_osc_complex(w);
  return airy_near_real(w);
}

// Stable difference of the exponents zeta(a) - zeta(b), i.e.
// (2/3)(a^{3/2} - b^{3/2}) with principal branches, without cancellation
// when a is near b. The rationalized form is an algebraic identity, so it
// holds for general complex arguments, including the negative real axis
// approached from above (+0 imaginary part).
inline cd zeta_difference(cd a, cd b) {
  const cd sa = std::sqrt(a), sb = std::sqrt(b);
  return 2.0 / 3.0 * (a - b) * (a + sa * sb + b) / (sa + sb);
}

// Quotient Ai(w_num)/Ai(w_den) with both arguments on the decaying side,
// formed from scaled values so arbitrarily deep arguments are safe.
inline cd airy_quotient_deep_pos(cd w_num, cd w_den) {
  const auto n = airy_scaled_pos_complex(w_num);
  const auto d = airy_scaled_pos_complex(w_den);
  return n.mantissa / d.mantissa * std::exp(-zeta_difference(w_num, w_den));
}

}  // namespace detail

}  // namespace gravidiff
