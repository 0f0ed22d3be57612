#pragma once

// CODATA-2018 SI constants and particle masses used across the library.
namespace gravidiff::constants {

inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double k_boltzmann = 1.380649e-23;       // J/K
inline constexpr double g_default = 9.80665;              // m/s^2, standard gravity
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double atomic_mass_unit = 1.66053907e-27;  // kg

inline constexpr double neutron_mass = 1.67492750e-27;    // kg
inline constexpr double ammonia_mass = 17.03 * atomic_mass_unit;
inline constexpr double cesium133_mass = 132.905 * atomic_mass_unit;
inline constexpr double rubidium87_mass = 86.909 * atomic_mass_unit;
inline constexpr double potassium39_mass = 39.0983 * atomic_mass_unit;

}  // namespace gravidiff::constants
