#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "gravidiff/reference.hpp"
#include "oracle_helpers.hpp"

using namespace gravidiff;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using cd = std::complex<double>;

namespace {

const Species unit = species::model_unit();
const FieldStrength unit_field = FieldStrength::from_g(1.0);

}  // namespace

TEST_CASE("bouncer ground levels in each convention") {
  const auto exact =
      bouncer_levels(1, unit, unit_field, LevelBasis::exact_airy, 1.0);
  const auto textbook =
      bouncer_levels(1, unit, unit_field, LevelBasis::wkb_textbook, 1.0);
  const auto compact =
      bouncer_levels(1, unit, unit_field, LevelBasis::wkb_compact, 1.0);
  CHECK_THAT(exact[0], WithinRel(1.85575708148923847842, 1e-12));
  CHECK_THAT(textbook[0], WithinRel(1.84158427617643333683, 1e-12));
  CHECK_THAT(compact[0], WithinRel(0.920792138088216668416, 1e-12));
  // the compact convention sits a factor of about two below the exact one
  CHECK_THAT(exact[0] / compact[0], WithinRel(2.01539197037697482300, 1e-12));
  CHECK(std::fabs(exact[0] / compact[0] - 2.0) < 0.1);

  // the semiclassical and exact spectra approach each other from below
  const int n_max = 12;
  const auto e = bouncer_levels(n_max, unit, unit_field, LevelBasis::exact_airy,
                                1.0);
  const auto w = bouncer_levels(n_max, unit, unit_field,
                                LevelBasis::wkb_textbook, 1.0);
  for (int n = 1; n <= n_max; ++n) {
    const double rel = std::fabs(w[n - 1] / e[n - 1] - 1.0);
    CHECK(rel < 0.01);
    if (n >= 5) CHECK(rel < 0.001);
  }
  for (auto basis : {LevelBasis::exact_airy, LevelBasis::wkb_textbook,
                     LevelBasis::wkb_compact}) {
    const auto levels = bouncer_levels(n_max, unit, unit_field, basis, 1.0);
    for (int i = 1; i < n_max; ++i) CHECK(levels[i] > levels[i - 1]);
  }
  CHECK_THROWS_AS(bouncer_levels(0, unit, unit_field, LevelBasis::exact_airy),
                  DomainError);
}

TEST_CASE("beat frequencies and their scaling") {
  CHECK_THAT(
      bohr_frequency(2, 1, unit, unit_field, LevelBasis::wkb_compact, 1.0),
      WithinRel(0.699075239999841251646, 1e-12));
  CHECK_THAT(
      bohr_frequency(2, 1, unit, unit_field, LevelBasis::exact_airy, 1.0),
      WithinRel(1.38885054251392104314, 1e-12));
  CHECK(bohr_frequency(3, 3, unit, unit_field, LevelBasis::exact_airy, 1.0) ==
        0.0);
  CHECK_THAT(
      bohr_frequency(1, 4, unit, unit_field, LevelBasis::wkb_textbook, 1.0),
      WithinRel(-bohr_frequency(4, 1, unit, unit_field,
                                LevelBasis::wkb_textbook, 1.0),
                1e-15));

  // increasing the force eightfold at fixed mass quadruples every frequency
  const FieldStrength strong = FieldStrength::from_g(8.0);
  for (auto basis : {LevelBasis::exact_airy, LevelBasis::wkb_textbook,
                     LevelBasis::wkb_compact}) {
    const double base = bohr_frequency(3, 1, unit, unit_field, basis, 1.0);
    CHECK_THAT(bohr_frequency(3, 1, unit, strong, basis, 1.0),
               WithinRel(4.0 * base, 1e-13));
  }

  // frequencies factor into (m/hbar)^{1/3} (F/m)^{2/3} times a pure number
  const Species heavy{"heavy", 2.3, 2.3};
  const double hbar2 = 1.9, g2 = 0.7;
  const double pref1 = std::cbrt(1.0 / 1.0) * std::pow(1.0, 2.0 / 3.0);
  const double pref2 = std::cbrt(2.3 / hbar2) *
                       std::pow(2.3 * g2 / 2.3, 2.0 / 3.0);
  for (auto basis : {LevelBasis::exact_airy, LevelBasis::wkb_textbook,
                     LevelBasis::wkb_compact}) {
    const double w1 = bohr_frequency(4, 2, unit, unit_field, basis, 1.0);
    const double w2 = bohr_frequency(4, 2, heavy, FieldStrength::from_g(g2),
                                     basis, hbar2);
    CHECK_THAT(w2 / w1, WithinRel(pref2 / pref1, 1e-12));
  }
}

TEST_CASE("bouncer densities") {
  const double kb = std::cbrt(2.0);  // length scale for m = hbar = F = 1

  // a single stationary state never moves
  const auto ground = bouncer_state({cd(1.0, 0.0)}, LevelBasis::exact_airy,
                                    unit, unit_field, 1.0);
  const std::vector<double> probes{0.3, 0.9, 2.1};
  const auto d0 = bouncer_density(ground, probes, 0.0, unit, unit_field, 1.0);
  for (double t : {0.4, 1.9, 13.7}) {
    const auto dt = bouncer_density(ground, probes, t, unit, unit_field, 1.0);
    for (std::size_t j = 0; j < probes.size(); ++j)
      CHECK_THAT(dt[j], WithinRel(d0[j], 1e-12));
  }

  // nothing leaks below the floor
  const auto below =
      bouncer_density(ground, {-0.5, 0.0}, 0.0, unit, unit_field, 1.0);
  CHECK(below[0] == 0.0);
  CHECK(below[1] == 0.0);

  // an equal two-state superposition integrates to one at any time
  const auto both = bouncer_state({cd(1.0, 0.0), cd(1.0, 0.0)},
                                  LevelBasis::exact_airy, unit, unit_field,
                                  1.0);
  CHECK_THAT(std::norm(both.coefficients[0]), WithinRel(0.5, 1e-14));
  const double z_hi = (8.0 - airy_zero(2)) / kb;
  for (double t : {0.0, 0.37}) {
    const double total = oracle::integrate_real(
        [&](double z) {
          return bouncer_density(both, {z}, t, unit, unit_field, 1.0)[0];
        },
        1e-12, z_hi, 1e-9);
    CHECK_THAT(total, WithinAbs(1.0, 1e-6));
  }

  // the beat at a probe point has exactly the Bohr period
  const double omega =
      bohr_frequency(2, 1, unit, unit_field, LevelBasis::exact_airy, 1.0);
  const double period = 2.0 * M_PI / omega;
  const std::vector<double> probe{0.7 / kb};
  for (double t0 : {0.11, 0.73, 2.9}) {
    const double a =
        bouncer_density(both, probe, t0, unit, unit_field, 1.0)[0];
    const double b =
        bouncer_density(both, probe, t0 + period, unit, unit_field, 1.0)[0];
    CHECK_THAT(b, WithinRel(a, 1e-10));
  }
  // and genuinely oscillates in between
  const double half = bouncer_density(both, probe, 0.11 + period / 2.0, unit,
                                      unit_field, 1.0)[0];
  const double start =
      bouncer_density(both, probe, 0.11, unit, unit_field, 1.0)[0];
  CHECK(std::fabs(half - start) > 1e-3 * (half + start));

  // an unnormalized state is rejected by the density routine
  BouncerState broken = both;
  broken.coefficients[0] *= 2.0;
  CHECK_THROWS_AS(
      bouncer_density(broken, probes, 0.0, unit, unit_field, 1.0),
      DomainError);
}

TEST_CASE("falling packet identities") {
  const FieldStrength two = FieldStrength::from_g(2.0);
  const GaussianPacket packet{0.0, 1.0};

  // the instantaneous check is the identity
  const auto at0 = falling_packet(packet, 0.0, unit, two, 1.0);
  CHECK(at0.translation_deviation == 0.0);
  CHECK(at0.phase_deviation == 0.0);
  CHECK(at0.centroid_shift == 0.0);

  // closed-form check at a finite time
  const auto chk = falling_packet(packet, 1.3, unit, two, 1.0);
  CHECK(chk.translation_deviation <= 1e-12);
  CHECK(chk.phase_deviation <= 1e-8);
  CHECK_THAT(chk.centroid_shift, WithinRel(2.0 * 1.3 * 1.3 / 2.0, 1e-14));

  // the centroid of the evolved density actually sits at z0 + shift
  const double shift = chk.centroid_shift;
  const auto density = [&](double z) {
    return std::norm(detail::evolved_gaussian(z, 1.3, packet.z0, packet.sigma,
                                              2.0, 1.0, 1.0));
  };
  const double lo = packet.z0 + shift - 12.0, hi = packet.z0 + shift + 12.0;
  const double mass = oracle::integrate_real(density, lo, hi, 1e-12);
  const double first = oracle::integrate_real(
      [&](double z) { return z * density(z); }, lo, hi, 1e-12);
  CHECK_THAT(mass, WithinAbs(1.0, 1e-9));
  CHECK_THAT(first / mass, WithinAbs(packet.z0 + shift, 1e-10));

  // the internal free evolution agrees with the textbook spreading Gaussian
  for (double z : {-0.7, 0.2, 1.9}) {
    const cd got = detail::evolved_gaussian(z, 1.3, 0.3, 0.8, 0.0, 1.0, 1.0);
    const cd stretch(1.0, 1.3 / (2.0 * 0.8 * 0.8));
    const cd want = std::pow(2.0 * M_PI * 0.64, -0.25) / std::sqrt(stretch) *
                    std::exp(-(z - 0.3) * (z - 0.3) / (4.0 * 0.64 * stretch));
    CHECK_THAT(std::abs(got - want), WithinAbs(0.0, 1e-12));
  }

  // a heavier species falls the same distance when g is what is fixed
  const Species big{"big", 3.7, 3.7};
  const auto heavy_chk = falling_packet(packet, 1.3, big, two, 1.0);
  CHECK_THAT(heavy_chk.centroid_shift, WithinRel(shift, 1e-13));
  CHECK(heavy_chk.translation_deviation <= 1e-12);

  CHECK_THROWS_AS(falling_packet({0.0, -1.0}, 1.0, unit, two, 1.0),
                  DomainError);
}

TEST_CASE("enclosed-area phase") {
  CHECK(interferometer_phase({0.0, unit, FieldStrength::from_g(2.0)}, 1.0) ==
        0.0);
  CHECK_THAT(interferometer_phase({3.0, unit, FieldStrength::from_g(2.0)}, 1.0),
             WithinRel(6.0, 1e-15));
  // thermal neutron interferometer with a 1 cm^2 enclosed area
  const InterferometerConfig cfg{1e-4, species::neutron(), FieldStrength{}};
  CHECK_THAT(interferometer_phase(cfg), WithinRel(247377604824.397704, 1e-12));
  // linear in the area
  CHECK_THAT(interferometer_phase({2e-4, species::neutron(), FieldStrength{}}),
             WithinRel(2.0 * interferometer_phase(cfg), 1e-14));
  CHECK_THROWS_AS(interferometer_phase({-1.0, unit, FieldStrength{}}),
                  DomainError);
}
