#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>

#include "deltaprop/kernels.hpp"
#include "deltaprop/units.hpp"

using namespace deltaprop::units;

TEST_CASE("scales from the declared mass and length") {
  const Constants c;
  const UnitSystem u = UnitSystem::rb87_micron(c);
  CHECK(u.scale(Dimension::length) == 1e-6);
  CHECK(u.scale(Dimension::time) ==
        doctest::Approx(c.rb87_mass * 1e-12 / c.hbar).epsilon(1e-15));
  CHECK(u.scale(Dimension::velocity) ==
        doctest::Approx(c.hbar / (c.rb87_mass * 1e-6)).epsilon(1e-15));
  CHECK(u.scale(Dimension::wavenumber) == 1e6);
  CHECK(u.scale(Dimension::energy_length) ==
        doctest::Approx(c.hbar * c.hbar / (c.rb87_mass * 1e-6)).epsilon(1e-15));
}

TEST_CASE("micron lengths map to unit naturals") {
  const UnitSystem u = UnitSystem::rb87_micron();
  CHECK(u.to_natural(50e-6, Dimension::length) == doctest::Approx(50.0).epsilon(1e-15));
}

TEST_CASE("beam at 1 cm/s") {
  // k = m v / hbar for the 87Rb beam, in natural wavenumber units.
  const Constants c;
  const UnitSystem u = UnitSystem::rb87_micron(c);
  const double k_si = c.rb87_mass * 0.01 / c.hbar;
  const double k_nat = u.to_natural(k_si, Dimension::wavenumber);
  CHECK(k_nat == doctest::Approx(13.6848).epsilon(1e-4));
  // Equivalently: velocity 1 cm/s in natural velocity units.
  CHECK(u.to_natural(0.01, Dimension::velocity) ==
        doctest::Approx(k_nat).epsilon(1e-12));
}

TEST_CASE("round trips are the identity") {
  const UnitSystem u = UnitSystem::rb87_micron();
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> mag(-8.0, 8.0);
  const Dimension dims[] = {Dimension::length, Dimension::time,
                            Dimension::velocity, Dimension::wavenumber,
                            Dimension::energy_length};
  for (int i = 0; i < 20; ++i) {
    const double v = std::pow(10.0, mag(rng));
    const Dimension d = dims[i % 5];
    CHECK(std::abs(u.from_natural(u.to_natural(v, d), d) / v - 1.0) < 1e-15);
  }
}

TEST_CASE("physics is scale invariant") {
  // The same SI scenario evaluated in two unit systems maps back to the
  // same SI kernel value.
  const Constants c;
  UnitSystem a = UnitSystem::rb87_micron(c);
  UnitSystem b = a;
  b.length_scale = 2.5e-6;

  const double x_si = 30e-6, xp_si = -12e-6, t_si = 20e-3, xi_si = 5e-6;
  const double v0_si = c.hbar * 0.01;  // energy*length

  auto kernel_si = [&](const UnitSystem& u) {
    const auto sys = deltaprop::kernels::LaserSystem::two_level(
        u.to_natural(v0_si, Dimension::energy_length),
        u.to_natural(xi_si, Dimension::length));
    const auto k = deltaprop::kernels::two_level_kernel(
        sys, u.to_natural(x_si, Dimension::length),
        u.to_natural(t_si, Dimension::time),
        u.to_natural(xp_si, Dimension::length), 0.0);
    // kernel carries dimension 1/length: map back by dividing by the scale
    return k(0, 1) * (1.0 / u.scale(Dimension::length));
  };
  const auto ka = kernel_si(a), kb = kernel_si(b);
  CHECK(std::abs(ka - kb) / std::abs(ka) < 1e-12);
}

TEST_CASE("constants file") {
  const std::string path = "test_constants_tmp.txt";
  {
    std::ofstream out(path);
    out << "# test values\n"
        << "hbar = 1.0e-34\n"
        << "rb87_mass = 1.5e-25  # trailing comment\n";
  }
  const Constants c = load_constants(path);
  CHECK(c.hbar == 1.0e-34);
  CHECK(c.rb87_mass == 1.5e-25);
  {
    std::ofstream out(path);
    out << "plancks_other_constant = 3\n";
  }
  CHECK_THROWS_AS(load_constants(path), std::runtime_error);
  CHECK_THROWS_AS(load_constants("no_such_file_anywhere.txt"), std::runtime_error);
  std::remove(path.c_str());
}
