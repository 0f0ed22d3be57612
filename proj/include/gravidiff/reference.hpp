#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "gravidiff/constants.hpp"
#include "gravidiff/model.hpp"
#include "gravidiff/specfun.hpp"

namespace gravidiff {

// Spectrum conventions for a particle bouncing on a hard floor in a uniform
// force field. exact_airy places the levels at the Airy-function roots;
// wkb_textbook is the standard semiclassical quantization; wkb_compact is a
// historical compact variant kept for comparison (it sits roughly a factor
// of two below the exact spectrum and is preserved deliberately, not fixed).
enum class LevelBasis { exact_airy, wkb_textbook, wkb_compact };

inline std::vector<double> bouncer_levels(int n_max, const Species& species,
                                          const FieldStrength& field,
                                          LevelBasis basis,
                                          double hbar = constants::hbar) {
  if (n_max < 1)
    throw DomainError("bouncer_levels: need at least one level");
  species.validate();
  const double F = field.force(species);
  if (!(F > 0.0)) throw DomainError("bouncer_levels: force must be positive");
  const double m = species.m_inertial;
  const double scale = std::cbrt(hbar * hbar * F * F / (2.0 * m));
  const double scale_compact = std::cbrt(hbar * hbar * F * F / m);
  std::vector<double> levels(n_max);
  for (int n = 1; n <= n_max; ++n) {
    switch (basis) {
      case LevelBasis::exact_airy:
        levels[n - 1] = -airy_zero(n) * scale;
        break;
      case LevelBasis::wkb_textbook:
        levels[n - 1] =
            std::pow(1.5 * M_PI * (n - 0.25), 2.0 / 3.0) * scale;
        break;
      case LevelBasis::wkb_compact:
        levels[n - 1] =
            std::pow(0.375 * M_PI * (n - 0.25), 2.0 / 3.0) * scale_compact;
        break;
    }
  }
  return levels;
}

// (E_n - E_n')/hbar in the chosen basis; zero when the states coincide.
inline double bohr_frequency(int n, int n_prime, const Species& species,
                             const FieldStrength& field, LevelBasis basis,
                             double hbar = constants::hbar) {
  const int hi = std::max(n, n_prime);
  const auto levels = bouncer_levels(hi, species, field, basis, hbar);
  return (levels[n - 1] - levels[n_prime - 1]) / hbar;
}

struct BouncerState {
  std::vector<std::complex<double>> coefficients;
  std::vector<double> levels;
  LevelBasis basis = LevelBasis::exact_airy;

  void validate() const {
    if (coefficients.empty() || coefficients.size() != levels.size())
      throw DomainError("BouncerState: coefficient/level lists mismatch");
    double norm = 0.0;
    for (const auto& c : coefficients) norm += std::norm(c);
    if (std::fabs(norm - 1.0) > 1e-9)
      throw DomainError("BouncerState: coefficients are not normalized");
    for (std::size_t i = 1; i < levels.size(); ++i)
      if (!(levels[i] > levels[i - 1]))
        throw DomainError("BouncerState: levels must increase strictly");
  }
};

// Builds a normalized superposition over the lowest levels of the basis.
inline BouncerState bouncer_state(std::vector<std::complex<double>> coeffs,
                                  LevelBasis basis, const Species& species,
                                  const FieldStrength& field,
                                  double hbar = constants::hbar) {
  if (coeffs.empty())
    throw DomainError("bouncer_state: need at least one coefficient");
  double norm = 0.0;
  for (const auto& c : coeffs) norm += std::norm(c);
  if (!(norm > 0.0))
    throw DomainError("bouncer_state: coefficients are all zero");
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& c : coeffs) c *= inv;
  const int n = (int)coeffs.size();
  return BouncerState{std::move(coeffs),
                      bouncer_levels(n, species, field, basis, hbar), basis};
}

// Probability density of the superposition at the given heights and time.
// The spatial profiles are always the normalized shifted-Airy bound states
// (zero below the floor); the chosen basis only sets the beat frequencies.
inline std::vector<double> bouncer_density(const BouncerState& state,
                                           const std::vector<double>& heights,
                                           double t, const Species& species,
                                           const FieldStrength& field,
                                           double hbar = constants::hbar) {
  state.validate();
  species.validate();
  const double F = field.force(species);
  if (!(F > 0.0)) throw DomainError("bouncer_density: force must be positive");
  const double m = species.m_inertial;
  const double kb = std::cbrt(2.0 * m * F / (hbar * hbar));
  const int n_levels = (int)state.levels.size();
  std::vector<double> roots(n_levels), slopes(n_levels);
  for (int n = 1; n <= n_levels; ++n) {
    roots[n - 1] = airy_zero(n);
    slopes[n - 1] = std::fabs(airy_Ai(roots[n - 1]).derivative);
  }
  std::vector<double> density(heights.size(), 0.0);
  for (std::size_t j = 0; j < heights.size(); ++j) {
    const double z = heights[j];
    if (z <= 0.0) continue;
    std::complex<double> amp = 0.0;
    for (int i = 0; i < n_levels; ++i) {
      const double mode =
          std::sqrt(kb) * airy_Ai(kb * z + roots[i]).value / slopes[i];
      amp += state.coefficients[i] * mode *
             std::exp(std::complex<double>(0.0, -state.levels[i] * t / hbar));
    }
    density[j] = std::norm(amp);
  }
  return density;
}

struct GaussianPacket {
  double z0 = 0.0;     // initial center
  double sigma = 1.0;  // initial position spread: psi ~ exp(-(z-z0)^2/4 sigma^2)

  void validate() const {
    if (!(sigma > 0.0))
      throw DomainError("GaussianPacket: width must be positive");
  }
};

struct PacketCheck {
  double translation_deviation = 0.0;  // density vs. shifted free density
  double phase_deviation = 0.0;        // residual of the phase factorization
  double centroid_shift = 0.0;         // displacement along the fall, Ft^2/2m
};

namespace detail {

// exp-quadratic Gaussian integral: integral of exp(-A u^2 + B u + C) du
// over the real line, Re A > 0, principal square root.
inline std::complex<double> gauss_integral(std::complex<double> A,
                                           std::complex<double> B,
                                           std::complex<double> C) {
  const std::complex<double> pi(M_PI, 0.0);
  return std::sqrt(pi / A) * std::exp(B * B / (4.0 * A) + C);
}

// Closed-form evolution of a rest Gaussian under the linear potential of a
// signed force f along the axis (f = 0 gives the free packet), done by the
// exact path-integral Gaussian quadrature so no factorized shortcut enters.
inline std::complex<double> evolved_gaussian(double z, double t, double z0,
                                             double sigma, double f, double m,
                                             double hbar) {
  const double s2 = sigma * sigma;
  const double front = std::pow(2.0 * M_PI * s2, -0.25);
  if (t == 0.0) return {front * std::exp(-(z - z0) * (z - z0) / (4.0 * s2)), 0.0};
  const double alpha = m / (2.0 * hbar * t);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> A = 1.0 / (4.0 * s2) - i * alpha;
  const std::complex<double> B =
      z0 / (2.0 * s2) + i * (-2.0 * alpha * z + f * t / (2.0 * hbar));
  const std::complex<double> C =
      i * (alpha * z * z + f * t * z / (2.0 * hbar) -
           f * f * t * t * t / (24.0 * m * hbar)) -
      z0 * z0 / (4.0 * s2);
  const std::complex<double> prefactor =
      std::sqrt(std::complex<double>(0.0, -m / (2.0 * M_PI * hbar * t)));
  return front * prefactor * gauss_integral(A, B, C);
}

}  // namespace detail

// Checks two closed-form identities of packet fall, with the axis oriented
// along the fall (z grows in the direction of the force):
//   density:  |psi_field(z,t)|^2 = |psi_free(z - F t^2/2m, t)|^2
//   phase:    psi_field(z,t) = psi_free(z - F t^2/2m, t)
//                              * exp(+i (F t z - F^2 t^3 / 6m) / hbar)
// Both sides are evolved independently through the exact propagator
// quadrature, so the reported deviations are genuine closed-form residuals.
inline PacketCheck falling_packet(const GaussianPacket& packet, double t,
                                  const Species& species,
                                  const FieldStrength& field,
                                  double hbar = constants::hbar) {
  packet.validate();
  species.validate();
  const double F = field.force(species);
  const double m = species.m_inertial;
  PacketCheck out;
  out.centroid_shift = F * t * t / (2.0 * m);
  const double spread =
      packet.sigma * std::sqrt(1.0 + std::pow(hbar * t / (2.0 * m * packet.sigma *
                                                          packet.sigma),
                                              2));
  const double lo = std::min(packet.z0, packet.z0 + out.centroid_shift) -
                    8.0 * spread;
  const double hi = std::max(packet.z0, packet.z0 + out.centroid_shift) +
                    8.0 * spread;
  const int samples = 321;
  double peak = 0.0;
  std::vector<std::complex<double>> field_side(samples), free_side(samples);
  for (int j = 0; j < samples; ++j) {
    const double z = lo + (hi - lo) * j / (samples - 1);
    field_side[j] = detail::evolved_gaussian(z, t, packet.z0, packet.sigma, F,
                                             m, hbar);
    free_side[j] = detail::evolved_gaussian(z - out.centroid_shift, t,
                                            packet.z0, packet.sigma, 0.0, m,
                                            hbar);
    peak = std::max(peak, std::abs(free_side[j]));
  }
  for (int j = 0; j < samples; ++j) {
    const double z = lo + (hi - lo) * j / (samples - 1);
    out.translation_deviation =
        std::max(out.translation_deviation,
                 std::fabs(std::norm(field_side[j]) - std::norm(free_side[j])));
    if (std::abs(free_side[j]) < 1e-6 * peak) continue;
    const std::complex<double> theta(
        0.0, (F * t * z - F * F * t * t * t / (6.0 * m)) / hbar);
    out.phase_deviation =
        std::max(out.phase_deviation,
                 std::abs(field_side[j] * std::exp(-theta) / free_side[j] -
                          1.0));
  }
  return out;
}

struct InterferometerConfig {
  double area = 0.0;  // area enclosed by the two interferometer paths
  Species species;
  FieldStrength field;

  void validate() const {
    if (!(area >= 0.0))
      throw DomainError("InterferometerConfig: area must be non-negative");
    species.validate();
  }
};

// Phase difference m_i F A / hbar^2 accumulated between two paths that
// enclose the area A in the uniform force field.
inline double interferometer_phase(const InterferometerConfig& config,
                                   double hbar = constants::hbar) {
  config.validate();
  return config.species.m_inertial * config.field.force(config.species) *
         config.area / (hbar * hbar);
}

}  // namespace gravidiff
