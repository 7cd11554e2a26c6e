#include "deltaprop/units.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace deltaprop::units {

Constants load_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_constants: cannot open " + path);
  }
  Constants c;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string key, eq;
    double value;
    if (!(ss >> key >> eq >> value) || eq != "=") continue;
    if (key == "hbar") {
      c.hbar = value;
    } else if (key == "rb87_mass") {
      c.rb87_mass = value;
    } else {
      throw std::runtime_error("load_constants: unknown key " + key);
    }
  }
  return c;
}

double UnitSystem::scale(Dimension d) const {
  switch (d) {
    case Dimension::length:
      return length_scale;
    case Dimension::time:
      return mass * length_scale * length_scale / hbar;
    case Dimension::velocity:
      return hbar / (mass * length_scale);
    case Dimension::wavenumber:
      return 1.0 / length_scale;
    case Dimension::energy_length:
      return hbar * hbar / (mass * length_scale);
  }
  throw std::invalid_argument("UnitSystem: unknown dimension");
}

double UnitSystem::to_natural(double value_si, Dimension d) const {
  return value_si / scale(d);
}

double UnitSystem::from_natural(double natural_value, Dimension d) const {
  return natural_value * scale(d);
}

UnitSystem UnitSystem::rb87_micron(const Constants& c) {
  UnitSystem u;
  u.mass = c.rb87_mass;
  u.length_scale = 1e-6;
  u.hbar = c.hbar;
  return u;
}

}  // namespace deltaprop::units
