#pragma once

#include <string>

#include "larmor/vec.hpp"

namespace larmor::pulse {

enum class Envelope { Flat, Cos4 };
enum class Helicity { Right, Left };

std::string to_string(Envelope e);
std::string to_string(Helicity h);
Envelope envelope_from_string(const std::string& s);
Helicity helicity_from_string(const std::string& s);

/// Circularly polarised pulse
///   A(t) = -A0 f(t) (cos(wt), s sin(wt)),   A0 = F/w,  s = +1 (Right) or -1 (Left),
/// with f = 1 (Flat) or f = cos^4(wt/4) (Cos4). Immutable value type.
class PulseSpec {
 public:
  PulseSpec(double field_au, double omega_au, Envelope envelope = Envelope::Flat,
            Helicity helicity = Helicity::Right);

  double field() const { return field_; }
  double omega() const { return omega_; }
  double a0() const { return field_ / omega_; }
  Envelope envelope() const { return envelope_; }
  Helicity helicity() const { return helicity_; }
  double helicity_sign() const { return helicity_ == Helicity::Right ? 1.0 : -1.0; }
  double period() const;

  /// Real-time support of the envelope: [-2pi/w, 2pi/w] for Cos4, unbounded for Flat.
  double window_start() const;
  double window_end() const;
  bool has_window() const { return envelope_ == Envelope::Cos4; }

  PulseSpec with_envelope(Envelope e) const { return {field_, omega_, e, helicity_}; }
  PulseSpec with_helicity(Helicity h) const { return {field_, omega_, envelope_, h}; }
  PulseSpec with_field(double f) const { return {f, omega_, envelope_, helicity_}; }

 private:
  double field_;
  double omega_;
  Envelope envelope_;
  Helicity helicity_;
};

/// Envelope f(t), analytically continued (cos^4 is entire).
Complex envelope_value(const PulseSpec& spec, Complex t);

/// A(t) at complex t; Cos4 uses the analytic continuation everywhere.
CVec2 vector_potential(const PulseSpec& spec, Complex t);

/// F(t) = -dA/dt, exact derivative of vector_potential.
CVec2 electric_field(const PulseSpec& spec, Complex t);

/// A(t) on the real axis, zero outside the Cos4 window.
Vec2 vector_potential_real(const PulseSpec& spec, double t);

/// Antiderivative G(t) of vector_potential (G' = A), entire in t.
CVec2 vector_potential_integral(const PulseSpec& spec, Complex t);

/// Integral of vector_potential_real over [t0, t1] on the real axis
/// (honours the Cos4 compact support).
Vec2 vector_potential_integral_real(const PulseSpec& spec, double t0, double t1);

/// I [W/cm^2] -> F [a.u.].
double intensity_to_field(double intensity_wcm2);

}  // namespace larmor::pulse
