#pragma once

#include <string>

namespace larmor::units {

inline constexpr double kHartreeEv = 27.211386;
inline constexpr double kAuTimeAs = 24.18884;
inline constexpr double kAuIntensityWcm2 = 3.50945e16;
inline constexpr double kOmegaNmProduct = 45.5634;  // w [a.u.] * lambda [nm]
inline constexpr double kSpeedOfLight = 137.035999;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class Unit { Hartree, ElectronVolt, AuTime, Attosecond, Femtosecond, AuField, WattPerCm2, Nanometer, AuFrequency };

Unit unit_from_string(const std::string& name);
std::string to_string(Unit u);

/// Converts among {hartree, eV}, {a.u. time, as, fs}, {a.u. field, W/cm^2}
/// and {nm, a.u. frequency}. Throws std::invalid_argument for any other pair.
double convert_units(double x, Unit from, Unit to);

inline double au_to_as(double t) { return t * kAuTimeAs; }

}  // namespace larmor::units
