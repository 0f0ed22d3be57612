#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "gravidiff/model.hpp"
#include "gravidiff/specfun.hpp"

namespace gravidiff {

// Scales of the exact (non-paraxial) treatment: the field equation in a
// uniform force admits Airy-function solutions, and kappa/gamma convert
// height and energy into the Airy argument Ai(kappa z - gamma eps).
struct NonparaxialParams {
  double E = 0.0;      // total beam energy
  double F = 1.0;      // force magnitude
  double m_i = 1.0;    // inertial mass
  double hbar = 1.0;
  double kappa = 0.0;  // inverse length scale of the Airy argument
  double gamma = 0.0;  // inverse energy scale, kappa / F

  // kappa = (2 m F / hbar^2)^(1/3) makes Ai(kappa z - gamma eps) an exact
  // solution (the default). The historical variant (hbar^2 F^5)^(1/3)/(2m)
  // is kept selectable for comparison in unit-free settings; it is not an
  // inverse length dimensionally.
  enum class KappaRule { consistent, historical };

  static NonparaxialParams make(double E, double F, double m_i,
                                double hbar = 1.0,
                                KappaRule rule = KappaRule::consistent) {
    if (!(F > 0.0)) throw DomainError("NonparaxialParams: force must be positive");
    if (!(m_i > 0.0)) throw DomainError("NonparaxialParams: mass must be positive");
    if (!(hbar > 0.0)) throw DomainError("NonparaxialParams: hbar must be positive");
    NonparaxialParams p;
    p.E = E;
    p.F = F;
    p.m_i = m_i;
    p.hbar = hbar;
    p.kappa = rule == KappaRule::consistent
                  ? std::cbrt(2.0 * m_i * F / (hbar * hbar))
                  : std::cbrt(hbar * hbar * F * F * F * F * F) / (2.0 * m_i);
    p.gamma = p.kappa / F;
    return p;
  }

  // transverse-mode energy eps(k) = E - hbar^2 k^2 / (2m)
  double epsilon(double k) const {
    return E - hbar * hbar * k * k / (2.0 * m_i);
  }
};

enum class QuotientMode { exact, asymptotic, linear };

namespace detail {

// One-sided principal-branch form of the Airy quotient: on the oscillatory
// side this is the downward-propagating wave, on the decaying side the
// recessive envelope. Arguments are the two Airy-argument values.
inline std::complex<double> quotient_one_sided(double w_num, double w_den) {
  using cd = std::complex<double>;
  if (w_num == w_den) return {1.0, 0.0};
  const cd a(w_den, 0.0), b(w_num, 0.0);
  return std::pow(a / b, 0.25) * std::exp(zeta_difference(a, b));
}

}  // namespace detail

// Ratio Ai(kappa z - gamma eps)/Ai(-gamma eps) of the height solution to its
// aperture-plane value, for the transverse mode of wave number k.
//  - exact: the literal ratio (scaled internally when both arguments are
//    deep on the decaying side).
//  - asymptotic: leading one-sided form with principal branches.
//  - linear: small-height expansion 1 + kappa z / (4 gamma eps).
inline std::complex<double> airy_quotient(double z, double k,
                                          const NonparaxialParams& p,
                                          QuotientMode mode) {
  const double eps = p.epsilon(k);
  const double w_den = -p.gamma * eps;
  const double w_num = p.kappa * z + w_den;
  switch (mode) {
    case QuotientMode::linear:
      if (z == 0.0) return {1.0, 0.0};  // avoid 0/0 when eps vanishes too
      return {1.0 + p.kappa * z / (4.0 * p.gamma * eps), 0.0};
    case QuotientMode::asymptotic:
      return detail::quotient_one_sided(w_num, w_den);
    case QuotientMode::exact:
    default: {
      if (w_num > 30.0 && w_den > 30.0) {
        const auto q = detail::airy_quotient_deep_pos(
            std::complex<double>(w_num, 0.0), std::complex<double>(w_den, 0.0));
        return q;
      }
      const double den = airy_Ai(w_den).value;
      // the denominator can only vanish on the oscillatory side, where its
      // zeros are physical resonances of the half-space problem
      if (w_den < 0.0 && std::fabs(den) < 1e-12)
        throw DomainError("airy_quotient: denominator at a resonance pole");
      return {airy_Ai(w_num).value / den, 0.0};
    }
  }
}

// Discretization policy for the k-integrals. The composite midpoint rule is
// used throughout: nodes at (j + 1/2) h avoid both k = 0 and the endpoint.
struct QuadratureSpec {
  double gamma_eps_cut = 40.0;  // truncate where |gamma eps| reaches this
  double nodes_per_oscillation = 20.0;
  int min_nodes = 2001;
  double eta = 1e-6;     // relative imaginary contour shift inside the window
  double window = 25.0;  // |gamma eps| below which the exact ratio is used
  double k_max = 0.0;    // override; 0 = derive from gamma_eps_cut
  int nodes = 0;         // override; 0 = derive from the oscillation density
};

struct KernelResult {
  std::complex<double> value;
  double tail_fraction = 0.0;  // integrand magnitude at the cut over its peak
  bool tail_warning = false;   // truncation is not a converged tail
};

namespace detail {

inline double kernel_k_max(const NonparaxialParams& p, const QuadratureSpec& q) {
  if (q.k_max > 0.0) return q.k_max;
  // place the cut where the forbidden-side argument reaches gamma_eps_cut
  const double eps_cut = q.gamma_eps_cut / p.gamma;
  return std::sqrt(2.0 * p.m_i * (std::max(p.E, 0.0) + eps_cut)) / p.hbar;
}

inline int kernel_nodes(double k_max, double reach, const QuadratureSpec& q) {
  if (q.nodes > 0) return q.nodes;
  const double per_osc =
      q.nodes_per_oscillation * k_max * std::fabs(reach) / (2.0 * M_PI);
  return std::max(q.min_nodes, (int)std::ceil(per_osc));
}

// Quotient strategy for integration nodes: the one-sided form outside the
// transition window (where the full ratio is either a growing exponential
// or a resonance-riddled standing wave), and the full Airy ratio with a
// small complex contour shift inside it.
inline std::complex<double> node_quotient(double k, double z,
                                          const NonparaxialParams& p,
                                          const QuadratureSpec& q) {
  using cd = std::complex<double>;
  const double ge = p.gamma * p.epsilon(k);
  if (std::fabs(ge) > q.window)
    return quotient_one_sided(p.kappa * z - ge, -ge);
  const cd kc = k * cd(1.0, q.eta);
  const cd w_den = -p.gamma * (p.E - p.hbar * p.hbar * kc * kc / (2.0 * p.m_i));
  const cd w_num = p.kappa * z + w_den;
  return airy_value_complex(w_num) / airy_value_complex(w_den);
}

}  // namespace detail

// Diffraction kernel below the aperture plane: the k-integral of the Airy
// quotient against e^{ik dx}, folded to a cosine transform (the quotient is
// even in k). The forbidden-side integrand grows without bound in k, so the
// truncation at gamma_eps_cut is part of the kernel's definition; the
// tail_fraction diagnostic reports how non-negligible the cut is.
inline KernelResult kernel_K(double dx, double z, const NonparaxialParams& p,
                             const QuadratureSpec& quad = {}) {
  if (z > 0.0)
    throw DomainError("kernel_K: field point must lie below the aperture");
  const double k_max = detail::kernel_k_max(p, quad);
  const int n = detail::kernel_nodes(k_max, dx, quad);
  const double h = k_max / n;
  double peak = 0.0, last = 0.0;
  std::complex<double> sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double k = (j + 0.5) * h;
    const std::complex<double> qv = detail::node_quotient(k, z, p, quad);
    sum += qv * std::cos(k * dx);
    const double mag = std::abs(qv);
    peak = std::max(peak, mag);
    last = mag;
  }
  KernelResult result;
  result.value = sum * (h / M_PI);
  result.tail_fraction = peak > 0.0 ? last / peak : 0.0;
  result.tail_warning = result.tail_fraction > 1e-3;
  return result;
}

struct NearzoneResult {
  std::complex<double> value;
  double tail_fraction = 0.0;
  bool tail_warning = false;
  double paraxiality = 0.0;  // |z| sqrt(2 m E)/hbar, small in the near zone
  bool regime_warning = false;
};

// Wave just below a single slit of width L, evaluated from the k-integral
// with the k = 0 singularity removed analytically (the slit bracket behaves
// as i k L there). Accuracy is supported in the near zone |z| << hbar /
// sqrt(2 m E); outside it the attached diagnostics flag degradation.
inline NearzoneResult nearzone_single_slit(double x, double z, double L,
                                           const NonparaxialParams& p,
                                           const QuadratureSpec& quad = {}) {
  if (!(L > 0.0))
    throw DomainError("nearzone_single_slit: slit width must be positive");
  if (z > 0.0)
    throw DomainError("nearzone_single_slit: field point must lie below the aperture");
  const double k_max = detail::kernel_k_max(p, quad);
  const double reach = std::fabs(x) + L / 2.0;
  const int n = detail::kernel_nodes(k_max, reach, quad);
  const double h = k_max / n;
  const double lo = x - L / 2.0, hi = x + L / 2.0;
  double peak = 0.0, last = 0.0;
  std::complex<double> sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const double k = (j + 0.5) * h;
    const std::complex<double> qv = detail::node_quotient(k, z, p, quad);
    const std::complex<double> term =
        qv * ((std::sin(k * hi) - std::sin(k * lo)) / k);
    sum += term;
    const double mag = std::abs(term);
    peak = std::max(peak, mag);
    last = mag;
  }
  NearzoneResult result;
  result.value = sum * (h / (M_PI * std::sqrt(L)));
  result.tail_fraction = peak > 0.0 ? last / peak : 0.0;
  result.tail_warning = result.tail_fraction > 1e-3;
  result.paraxiality =
      std::fabs(z) * std::sqrt(2.0 * p.m_i * std::max(p.E, 0.0)) / p.hbar;
  result.regime_warning = result.paraxiality > 0.1;
  return result;
}

// Leading small-height expansion just below the slit: the aperture profile
// plus a correction linear in both height and transverse offset. Valid for
// sources dropped from rest.
inline std::complex<double> nearzone_smallz(double x, double z, double L,
                                            const NonparaxialParams& p) {
  if (!(L > 0.0))
    throw DomainError("nearzone_smallz: slit width must be positive");
  const double plateau = std::fabs(x) < L / 2.0 ? 1.0 / std::sqrt(L) : 0.0;
  return {plateau - p.kappa * z * x * std::sqrt(L) / 4.0, 0.0};
}

}  // namespace gravidiff
