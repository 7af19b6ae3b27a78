#include "larmor/pulse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "larmor/units.hpp"

namespace larmor::pulse {

namespace {

constexpr double kPi = units::kPi;

// cos^4(wt/4) cos(wt) = 1/16 + sum_k c_k cos(n_k w t)
// cos^4(wt/4) sin(wt) =        sum_k c_k sin(n_k w t)
struct Harmonic {
  double coeff;
  double multiple;
};
constexpr double kCos4Constant = 1.0 / 16.0;
constexpr std::array<Harmonic, 4> kCos4Harmonics = {{{3.0 / 8.0, 1.0}, {0.25, 1.5}, {0.25, 0.5}, {1.0 / 16.0, 2.0}}};

}  // namespace

std::string to_string(Envelope e) { return e == Envelope::Flat ? "flat" : "cos4"; }
std::string to_string(Helicity h) { return h == Helicity::Right ? "right" : "left"; }

Envelope envelope_from_string(const std::string& s) {
  if (s == "flat") return Envelope::Flat;
  if (s == "cos4") return Envelope::Cos4;
  throw std::invalid_argument("unknown envelope '" + s + "' (expected flat or cos4)");
}

Helicity helicity_from_string(const std::string& s) {
  if (s == "right") return Helicity::Right;
  if (s == "left") return Helicity::Left;
  throw std::invalid_argument("unknown helicity '" + s + "' (expected right or left)");
}

PulseSpec::PulseSpec(double field_au, double omega_au, Envelope envelope, Helicity helicity)
    : field_(field_au), omega_(omega_au), envelope_(envelope), helicity_(helicity) {
  if (!(field_au > 0.0)) throw std::invalid_argument("pulse field amplitude must be positive");
  if (!(omega_au > 0.0)) throw std::invalid_argument("pulse frequency must be positive");
}

double PulseSpec::period() const { return 2.0 * kPi / omega_; }

double PulseSpec::window_start() const {
  return has_window() ? -2.0 * kPi / omega_ : -std::numeric_limits<double>::infinity();
}

double PulseSpec::window_end() const {
  return has_window() ? 2.0 * kPi / omega_ : std::numeric_limits<double>::infinity();
}

Complex envelope_value(const PulseSpec& spec, Complex t) {
  if (spec.envelope() == Envelope::Flat) return 1.0;
  const Complex c = std::cos(spec.omega() * t / 4.0);
  const Complex c2 = c * c;
  return c2 * c2;
}

CVec2 vector_potential(const PulseSpec& spec, Complex t) {
  const double w = spec.omega();
  const Complex amp = -spec.a0() * envelope_value(spec, t);
  return {amp * std::cos(w * t), spec.helicity_sign() * amp * std::sin(w * t)};
}

CVec2 electric_field(const PulseSpec& spec, Complex t) {
  const double w = spec.omega();
  const double a0 = spec.a0();
  const double s = spec.helicity_sign();
  const Complex cw = std::cos(w * t);
  const Complex sw = std::sin(w * t);
  Complex f = 1.0;
  Complex df = 0.0;
  if (spec.envelope() == Envelope::Cos4) {
    const Complex c = std::cos(w * t / 4.0);
    const Complex sn = std::sin(w * t / 4.0);
    f = c * c * c * c;
    df = -w * c * c * c * sn;
  }
  // F = -dA/dt with A = -a0 f (cos, s sin)
  return {a0 * (df * cw - f * w * sw), s * a0 * (df * sw + f * w * cw)};
}

Vec2 vector_potential_real(const PulseSpec& spec, double t) {
  if (spec.has_window() && (t < spec.window_start() || t > spec.window_end())) return {};
  return vector_potential(spec, t).real();
}

CVec2 vector_potential_integral(const PulseSpec& spec, Complex t) {
  const double w = spec.omega();
  const double a0 = spec.a0();
  const double s = spec.helicity_sign();
  if (spec.envelope() == Envelope::Flat) return {-a0 * std::sin(w * t) / w, s * a0 * std::cos(w * t) / w};

  Complex gx = kCos4Constant * t;
  Complex gy = 0.0;
  for (const auto& h : kCos4Harmonics) {
    const double nu = h.multiple * w;
    gx += h.coeff * std::sin(nu * t) / nu;
    gy -= h.coeff * std::cos(nu * t) / nu;
  }
  return {-a0 * gx, -s * a0 * gy};
}

Vec2 vector_potential_integral_real(const PulseSpec& spec, double t0, double t1) {
  if (spec.has_window()) {
    t0 = std::clamp(t0, spec.window_start(), spec.window_end());
    t1 = std::clamp(t1, spec.window_start(), spec.window_end());
  }
  return (vector_potential_integral(spec, t1) - vector_potential_integral(spec, t0)).real();
}

double intensity_to_field(double intensity_wcm2) {
  if (!(intensity_wcm2 > 0.0)) throw std::domain_error("intensity must be positive");
  return std::sqrt(intensity_wcm2 / units::kAuIntensityWcm2);
}

}  // namespace larmor::pulse
