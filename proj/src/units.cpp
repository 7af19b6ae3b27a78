#include "larmor/units.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace larmor::units {

namespace {

enum class Dimension { Energy, Time, Field, Frequency };

Dimension dimension(Unit u) {
  switch (u) {
    case Unit::Hartree:
    case Unit::ElectronVolt:
      return Dimension::Energy;
    case Unit::AuTime:
    case Unit::Attosecond:
    case Unit::Femtosecond:
      return Dimension::Time;
    case Unit::AuField:
    case Unit::WattPerCm2:
      return Dimension::Field;
    case Unit::Nanometer:
    case Unit::AuFrequency:
      return Dimension::Frequency;
  }
  throw std::logic_error("unhandled unit");
}

// Map to the atomic-unit value of the same dimension.
double to_au(double x, Unit u) {
  switch (u) {
    case Unit::Hartree: return x;
    case Unit::ElectronVolt: return x / kHartreeEv;
    case Unit::AuTime: return x;
    case Unit::Attosecond: return x / kAuTimeAs;
    case Unit::Femtosecond: return 1000.0 * x / kAuTimeAs;
    case Unit::AuField: return x;
    case Unit::WattPerCm2:
      if (x <= 0.0) throw std::domain_error("intensity must be positive");
      return std::sqrt(x / kAuIntensityWcm2);
    case Unit::AuFrequency: return x;
    case Unit::Nanometer:
      if (x <= 0.0) throw std::domain_error("wavelength must be positive");
      return kOmegaNmProduct / x;
  }
  throw std::logic_error("unhandled unit");
}

double from_au(double x, Unit u) {
  switch (u) {
    case Unit::Hartree: return x;
    case Unit::ElectronVolt: return x * kHartreeEv;
    case Unit::AuTime: return x;
    case Unit::Attosecond: return x * kAuTimeAs;
    case Unit::Femtosecond: return x * kAuTimeAs / 1000.0;
    case Unit::AuField: return x;
    case Unit::WattPerCm2: return x * x * kAuIntensityWcm2;
    case Unit::AuFrequency: return x;
    case Unit::Nanometer:
      if (x <= 0.0) throw std::domain_error("frequency must be positive");
      return kOmegaNmProduct / x;
  }
  throw std::logic_error("unhandled unit");
}

const std::map<std::string, Unit>& names() {
  static const std::map<std::string, Unit> m = {
      {"hartree", Unit::Hartree}, {"eV", Unit::ElectronVolt},   {"au_time", Unit::AuTime},
      {"as", Unit::Attosecond},   {"fs", Unit::Femtosecond},    {"au_field", Unit::AuField},
      {"Wcm2", Unit::WattPerCm2}, {"nm", Unit::Nanometer},      {"au_freq", Unit::AuFrequency},
  };
  return m;
}

}  // namespace

Unit unit_from_string(const std::string& name) {
  auto it = names().find(name);
  if (it == names().end()) throw std::invalid_argument("unknown unit '" + name + "'");
  return it->second;
}

std::string to_string(Unit u) {
  for (const auto& [k, v] : names())
    if (v == u) return k;
  throw std::logic_error("unhandled unit");
}

double convert_units(double x, Unit from, Unit to) {
  if (dimension(from) != dimension(to))
    throw std::invalid_argument("cannot convert " + to_string(from) + " to " + to_string(to));
  if (from == to) return x;
  return from_au(to_au(x, from), to);
}

}  // namespace larmor::units
