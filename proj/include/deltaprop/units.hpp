#ifndef DELTAPROP_UNITS_HPP
#define DELTAPROP_UNITS_HPP

#include <string>

namespace deltaprop::units {

/// Physical constants (SI).  Defaults are CODATA 2018; `load_constants`
/// can override them from a key-value text file.
struct Constants {
  double hbar = 1.054571817e-34;      // J s (CODATA 2018, exact from h)
  double rb87_mass = 1.44316060e-25;  // kg (87Rb atomic mass)
};

Constants load_constants(const std::string& path);

enum class Dimension { length, time, velocity, wavenumber, energy_length };

/// Natural-unit system hbar = m = 1 with a declared length scale.
/// Derived scales: time = m l^2 / hbar, velocity = hbar / (m l),
/// wavenumber = 1/l, energy*length = hbar^2 / (m l).
struct UnitSystem {
  double mass = 1.0;          // kg
  double length_scale = 1.0;  // m
  double hbar = 1.054571817e-34;

  double scale(Dimension d) const;
  double to_natural(double value_si, Dimension d) const;
  double from_natural(double natural_value, Dimension d) const;

  static UnitSystem rb87_micron(const Constants& c = Constants{});
};

}  // namespace deltaprop::units

#endif
