#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "gravidiff/model.hpp"

namespace gravidiff {

// Map between height and the rescaled evolution parameter of a stationary
// beam with total energy E in a uniform force field of magnitude F, together
// with the WKB bookkeeping quantities attached to it. The classical turning
// point z_t = E/F separates the oscillatory region (z < z_t) from the
// forbidden region (z > z_t) where the map continues to complex values.
struct QuasiTimeMap {
  double E = 1.0;     // total energy of the stationary state
  double F = 1.0;     // force magnitude; zero selects the free-beam limit
  double m_i = 1.0;   // inertial mass
  double hbar = 1.0;

  void validate() const {
    if (!(F >= 0.0))
      throw DomainError("QuasiTimeMap: force must be non-negative");
    if (!(m_i > 0.0)) throw DomainError("QuasiTimeMap: mass must be positive");
    if (!(hbar > 0.0)) throw DomainError("QuasiTimeMap: hbar must be positive");
    if (!(E >= 0.0)) throw DomainError("QuasiTimeMap: energy must be >= 0");
    if (!(E + F > 0.0))
      throw DomainError("QuasiTimeMap: energy and force cannot both vanish");
  }

  // +infinity in the free-beam limit: the whole axis is classical
  double turning_point() const { return E / F; }
};

struct QuasiTime {
  std::complex<double> tau;
  bool classical = true;  // real branch below the turning point
};

// Local wave number k(z) = sqrt(2 m |E - F z|) / hbar; vanishes at the
// turning point and is kept real (as a magnitude) on both sides of it.
inline double wavenumber(double z, const QuasiTimeMap& map) {
  map.validate();
  return std::sqrt(2.0 * map.m_i * std::fabs(map.E - map.F * z)) / map.hbar;
}

// Height-to-parameter map. On the classical side the closed form is
// written with the difference of square roots rationalized, so small |z|
// suffers no cancellation and the F -> 0 limit stays finite. Beyond the
// turning point the branch with Im tau > 0 is taken; that is the one for
// which the diffraction amplitudes decay monotonically with height.
inline QuasiTime tau_of_z(double z, const QuasiTimeMap& map) {
  map.validate();
  const double lead = std::sqrt(2.0 * map.m_i);
  const double kin = map.E - map.F * z;
  if (kin >= 0.0) {
    const double denom = std::sqrt(kin) + std::sqrt(map.E);
    const double tau = denom > 0.0 ? -lead * z / denom : 0.0;
    return {std::complex<double>(tau, 0.0), true};
  }
  const double re = -lead * std::sqrt(map.E) / map.F;
  const double im = lead * std::sqrt(-kin) / map.F;
  return {std::complex<double>(re, im), false};
}

// Inverse of the classical branch, exact in closed form. The admissible
// range is sqrt(E) + F tau / sqrt(2m) >= 0; outside it no height maps to
// the requested parameter.
inline double z_of_tau(double tau, const QuasiTimeMap& map) {
  map.validate();
  const double slope = map.F * tau / std::sqrt(2.0 * map.m_i);
  if (std::sqrt(map.E) + slope < 0.0)
    throw DomainError("z_of_tau: tau lies beyond the classical branch");
  return -std::sqrt(2.0 * map.E / map.m_i) * tau -
         map.F * tau * tau / (2.0 * map.m_i);
}

// Dimensionless semiclassical smallness parameter delta = m F / (hbar^2 k^3).
// The stationary WKB construction is trustworthy where this is small; it
// diverges at the turning point, reported as +infinity.
inline double wkb_validity(double z, const QuasiTimeMap& map) {
  const double k = wavenumber(z, map);
  if (k == 0.0) return std::numeric_limits<double>::infinity();
  return map.m_i * map.F / (map.hbar * map.hbar * k * k * k);
}

}  // namespace gravidiff
