#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <thread>
#include <vector>

#include "gravidiff/model.hpp"
#include "gravidiff/quasitime.hpp"
#include "gravidiff/specfun.hpp"

namespace gravidiff {

// Normalized indicator wave of the aperture: height 1/sqrt(L) on a single
// slit, 1/sqrt(2L) on each of the two slits, zero elsewhere.
struct ApertureWave {
  Aperture aperture;

  double height() const {
    return aperture.kind == Aperture::Kind::double_slit
               ? 1.0 / std::sqrt(2.0 * aperture.L)
               : 1.0 / std::sqrt(aperture.L);
  }

  double value(double x) const {
    const double half = aperture.L / 2.0;
    if (aperture.kind == Aperture::Kind::double_slit) {
      return std::fabs(std::fabs(x) - aperture.a) < half ? height() : 0.0;
    }
    return std::fabs(x) < half ? height() : 0.0;
  }

  // analytic squared norm: support length times height squared
  double norm() const {
    const double support = aperture.kind == Aperture::Kind::double_slit
                               ? 2.0 * aperture.L
                               : aperture.L;
    return support * height() * height();
  }
};

inline ApertureWave aperture_wave(const Aperture& aperture) {
  aperture.validate();
  return {aperture};
}

// Diffracted amplitude at transverse position x and height z, expressed as
// a sum of complex Fresnel integrals. The height dependence enters solely
// through the parameter map: below the aperture the real positive branch is
// used directly, above it the mirrored branch (complex beyond the turning
// point, which makes the amplitudes decay there).
inline std::complex<double> slit_amplitude(double x, double z,
                                           const Aperture& aperture,
                                           const QuasiTimeMap& map) {
  aperture.validate();
  map.validate();
  using cd = std::complex<double>;
  cd T = tau_of_z(z, map).tau;
  if (z > 0.0) T = -T;
  if (T == cd(0.0, 0.0)) return {aperture_wave(aperture).value(x), 0.0};

  // s = sqrt(m/(2 hbar T)); principal branch keeps arg(s) in [0, pi/4)
  const cd s = std::sqrt(map.m_i / (2.0 * map.hbar * T));
  const double half = aperture.L / 2.0;
  cd sum;
  double support;
  if (aperture.kind == Aperture::Kind::double_slit) {
    const double a = aperture.a;
    sum = fresnel_F(s * (half + a + x)) + fresnel_F(s * (half + a - x)) +
          fresnel_F(s * (half - a + x)) + fresnel_F(s * (half - a - x));
    support = 2.0 * aperture.L;
  } else {
    sum = fresnel_F(s * (half + x)) + fresnel_F(s * (half - x));
    support = aperture.L;
  }
  // 1/sqrt(pi i) = e^{-i pi/4}/sqrt(pi)
  const cd pref = std::polar(1.0 / std::sqrt(M_PI * support), -M_PI / 4.0);
  return pref * sum;
}

// Root of cos(Z^2) C(Z) + sin(Z^2) S(Z) = 0 locating the on-axis intensity
// maximum of a single slit; the returned constant is hbar*tau/(m L^2) =
// 1/(8 Z^2) at the first positive root.
inline double focus_constant() {
  static const double c_star = [] {
    // g(Z) = C cos(Z^2) + S sin(Z^2) is proportional to d|F|^2/dZ and has
    // g'(Z) = 1 + 2Z (S cos(Z^2) - C sin(Z^2)); the first positive root is
    // bracketed by [1, 2]
    double lo = 1.0, hi = 2.0, Z = 1.5;
    for (int it = 0; it < 80; ++it) {
      const auto [C, S] = fresnel_CS(Z);
      const double c2 = std::cos(Z * Z), s2 = std::sin(Z * Z);
      const double g = C * c2 + S * s2;
      const double gp = 1.0 + 2.0 * Z * (S * c2 - C * s2);
      if (g > 0.0)
        lo = Z;
      else
        hi = Z;
      double next = Z - g / gp;
      if (!(next > lo && next < hi)) next = (lo + hi) / 2.0;
      if (std::fabs(next - Z) < 1e-16 * Z) {
        Z = next;
        break;
      }
      Z = next;
    }
    return 1.0 / (8.0 * Z * Z);
  }();
  return c_star;
}

// Where the on-axis focus sits for a given species, beam and slit width.
struct FocusReport {
  double c_star = 0.0;    // dimensionless focusing constant
  double tau_star = 0.0;  // parameter value of the focus
  double z_star = 0.0;    // height of the focus relative to the aperture
  Species species;
  FieldStrength field;
  BeamConfig beam;
  double slit_width = 0.0;
};

inline FocusReport focus_height(const Species& species,
                                const FieldStrength& field,
                                const BeamConfig& beam, double L,
                                double hbar = constants::hbar) {
  species.validate();
  if (!(L > 0.0)) throw DomainError("focus_height: slit width must be positive");
  const double F = field.force(species);
  if (!(F > 0.0)) throw DomainError("focus_height: force must be positive");
  const BeamCanonical canon = convert_beam(beam, species, field);
  // kinetic energy at the aperture plane fixes the map there
  const double e_kin = 0.5 * species.m_inertial * canon.v * canon.v;
  FocusReport report;
  report.c_star = focus_constant();
  report.tau_star = report.c_star * species.m_inertial * L * L / hbar;
  const QuasiTimeMap map{e_kin, F, species.m_inertial, hbar};
  // closed-form inverse; both terms are negative, so no cancellation occurs
  report.z_star = z_of_tau(report.tau_star, map);
  report.species = species;
  report.field = field;
  report.beam = beam;
  report.slit_width = L;
  return report;
}

struct ComplexAmplitudeField {
  Grid grid;
  std::vector<std::complex<double>> amplitudes;  // row-major: iz * nx + ix

  std::complex<double> at(int ix, int iz) const {
    return amplitudes[(size_t)iz * grid.nx + ix];
  }
  double intensity(int ix, int iz) const { return std::norm(at(ix, iz)); }
};

struct PatternOptions {
  // fill nodes with z > 0 with the incident-beam intensity profile 1/k(z)
  // instead of treating them as an upward-diffracted region
  bool incident_wkb = false;
  // refuse evaluation on any node requiring the complex branch
  bool real_branch_only = false;
  unsigned threads = 0;  // 0 = one worker per hardware thread
};

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace detail

// Evaluates the diffracted amplitude on every grid node. Nodes are laid out
// row-major in z then x, each node is computed independently, and the
// result is byte-identical for any thread count.
inline ComplexAmplitudeField pattern_grid(const Aperture& aperture,
                                          const QuasiTimeMap& map,
                                          const Grid& grid,
                                          const PatternOptions& options = {}) {
  aperture.validate();
  map.validate();
  grid.validate();
  if (options.real_branch_only && grid.z_max > map.turning_point())
    throw DomainError(
        "pattern_grid: grid reaches past the turning point but only the real "
        "branch was allowed");
  if (options.incident_wkb) {
    for (int iz = 0; iz < grid.nz; ++iz)
      if (grid.z(iz) > 0.0 && wavenumber(grid.z(iz), map) == 0.0)
        throw DomainError(
            "pattern_grid: incident-profile fill undefined at the turning "
            "point");
  }

  ComplexAmplitudeField field{grid, {}};
  field.amplitudes.resize((size_t)grid.nx * grid.nz);
  const unsigned nthreads =
      std::min<unsigned>(detail::resolve_threads(options.threads),
                         (unsigned)grid.nz);

  auto rows = [&](int z_begin, int z_end) {
    for (int iz = z_begin; iz < z_end; ++iz) {
      const double z = grid.z(iz);
      const bool fill = options.incident_wkb && z > 0.0;
      const double fill_amp = fill ? 1.0 / std::sqrt(wavenumber(z, map)) : 0.0;
      for (int ix = 0; ix < grid.nx; ++ix) {
        std::complex<double>& out = field.amplitudes[(size_t)iz * grid.nx + ix];
        out = fill ? std::complex<double>(fill_amp, 0.0)
                   : slit_amplitude(grid.x(ix), z, aperture, map);
      }
    }
  };

  if (nthreads <= 1) {
    rows(0, grid.nz);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const int chunk = (grid.nz + (int)nthreads - 1) / (int)nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      const int begin = (int)t * chunk;
      const int end = std::min(grid.nz, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(rows, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return field;
}

}  // namespace gravidiff
