#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "constants.hpp"

// Shared domain types: unit conventions, species presets, force field, beam
// parametrizations, apertures and evaluation grids.
//
// Two unit conventions are supported. In `model` mode every input is a raw
// number (the hbar = m = 1 style used for dimensionless figures); in `si` mode
// all quantities are SI with the fixed constants from constants.hpp.

namespace gravidiff {

// Thrown for physically invalid inputs (negative kinetic energy, F <= 0 where
// a linear potential is required, and so on).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class UnitsMode { model, si };

struct Species {
  std::string name;
  double m_inertial = 1.0;
  double m_grav = 1.0;

  void validate() const {
    if (!(m_inertial > 0.0) || !(m_grav > 0.0))
      throw DomainError("species mass must be positive");
  }
};

namespace species {

inline Species model_unit() { return {"model", 1.0, 1.0}; }
inline Species neutron() {
  return {"n", constants::neutron_mass, constants::neutron_mass};
}
inline Species ammonia() {
  return {"NH3", constants::ammonia_mass, constants::ammonia_mass};
}
inline Species cesium133() {
  return {"Cs", constants::cesium133_mass, constants::cesium133_mass};
}
inline Species rubidium87() {
  return {"Rb", constants::rubidium87_mass, constants::rubidium87_mass};
}
inline Species potassium39() {
  return {"K", constants::potassium39_mass, constants::potassium39_mass};
}

inline std::vector<Species> registry() {
  return {model_unit(), neutron(), ammonia(), cesium133(), rubidium87(),
          potassium39()};
}

inline std::optional<Species> find(const std::string& name) {
  for (auto& s : registry())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace species

// Uniform force field. Stores the acceleration; the force on a given species
// is F = m_grav * g, which is what the propagation code consumes.
struct FieldStrength {
  double g = constants::g_default;

  double force(const Species& s) const { return s.m_grav * g; }

  static FieldStrength from_g(double g) { return {g}; }
  // Convenience for model-unit setups where the force itself is prescribed.
  static FieldStrength from_force(double F, const Species& s) {
    return {F / s.m_grav};
  }
};

enum class BeamDirection { downward, upward };

// A beam may be specified by total energy, by kinetic energy at the source
// height, or by speed at the source height. All three are related by
// E = m_i v^2/2 + F z0 and round-trip exactly.
struct BeamConfig {
  enum class Kind { total_energy, kinetic_energy, speed } kind = Kind::total_energy;
  double value = 0.0;
  double z0 = 0.0;
  BeamDirection direction = BeamDirection::downward;

  static BeamConfig total_energy(double E, double z0 = 0.0,
                                 BeamDirection d = BeamDirection::downward) {
    return {Kind::total_energy, E, z0, d};
  }
  static BeamConfig kinetic_energy(double E_kin, double z0 = 0.0,
                                   BeamDirection d = BeamDirection::downward) {
    return {Kind::kinetic_energy, E_kin, z0, d};
  }
  static BeamConfig speed(double v, double z0 = 0.0,
                          BeamDirection d = BeamDirection::downward) {
    return {Kind::speed, v, z0, d};
  }
};

struct BeamCanonical {
  double E = 0.0;   // total energy
  double v = 0.0;   // speed at z0
  double z0 = 0.0;  // source height
};

inline BeamCanonical convert_beam(const BeamConfig& beam, const Species& sp,
                                  const FieldStrength& field) {
  sp.validate();
  const double m = sp.m_inertial;
  const double F = field.force(sp);
  switch (beam.kind) {
    case BeamConfig::Kind::total_energy: {
      const double e_kin = beam.value - F * beam.z0;
      if (e_kin < 0.0)
        throw DomainError("total energy below potential at source height");
      return {beam.value, std::sqrt(2.0 * e_kin / m), beam.z0};
    }
    case BeamConfig::Kind::kinetic_energy: {
      if (beam.value < 0.0) throw DomainError("negative kinetic energy");
      return {beam.value + F * beam.z0, std::sqrt(2.0 * beam.value / m),
              beam.z0};
    }
    case BeamConfig::Kind::speed: {
      if (beam.value < 0.0) throw DomainError("negative speed");
      return {m * beam.value * beam.value / 2.0 + F * beam.z0, beam.value,
              beam.z0};
    }
  }
  throw DomainError("unreachable beam kind");
}

// Mean kinetic energy of a thermal source at temperature T (kelvin), 3 k_B T/2.
inline double kinetic_energy_from_temperature(double T_kelvin) {
  if (T_kelvin < 0.0) throw DomainError("negative temperature");
  return 1.5 * constants::k_boltzmann * T_kelvin;
}

struct Aperture {
  enum class Kind { single, double_slit } kind = Kind::single;
  double L = 1.0;  // slit width
  double a = 0.0;  // slit-center offset from the axis (double slit only)

  static Aperture single(double L) {
    Aperture ap{Kind::single, L, 0.0};
    ap.validate();
    return ap;
  }
  static Aperture double_slit(double L, double a) {
    Aperture ap{Kind::double_slit, L, a};
    ap.validate();
    return ap;
  }

  void validate() const {
    if (!(L > 0.0)) throw DomainError("slit width must be positive");
    if (kind == Kind::double_slit && !(a > L / 2.0))
      throw DomainError("double slit requires a > L/2 (non-overlapping slits)");
  }
};

struct Grid {
  double x_min = 0.0, x_max = 0.0;
  int nx = 1;
  double z_min = 0.0, z_max = 0.0;
  int nz = 1;

  void validate() const {
    if (nx < 1 || nz < 1) throw DomainError("grid counts must be >= 1");
    if (nx > 1 && !(x_max > x_min)) throw DomainError("degenerate x range");
    if (nz > 1 && !(z_max > z_min)) throw DomainError("degenerate z range");
  }

  double x(int i) const {
    return nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1);
  }
  double z(int j) const {
    return nz == 1 ? z_min : z_min + (z_max - z_min) * j / (nz - 1);
  }
};

}  // namespace gravidiff
