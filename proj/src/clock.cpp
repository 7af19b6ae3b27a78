#include "larmor/clock.hpp"

#include <cmath>
#include <stdexcept>

#include "larmor/units.hpp"

namespace larmor::clock {

namespace {

constexpr double kPi = units::kPi;

void require_nonzero(const MatrixElementPair& m) {
  if (m.amp_upper == 0.0 || m.amp_lower == 0.0) throw std::invalid_argument("rotation angle needs non-zero amplitudes");
}

double wrap(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

}  // namespace

double one_photon_rotation(const MatrixElementPair& m) {
  require_nonzero(m);
  const Complex up = m.amp_upper;
  const Complex down = (m.amp_upper + 2.0 * m.amp_lower) / 3.0;
  return wrap(std::arg(up * std::conj(down)));
}

double one_photon_rotation_tangent(const MatrixElementPair& m) {
  require_nonzero(m);
  const double d13 = std::arg(m.amp_lower) - std::arg(m.amp_upper);
  const double ratio = std::abs(m.amp_upper) / std::abs(m.amp_lower);
  return wrap(std::atan2(std::sin(-d13), 0.5 * ratio + std::cos(d13)));
}

double calibrated_rotation(double tau_ws, double dE, double ratio) {
  const double x = tau_ws * dE;
  return wrap(std::atan2(std::sin(x), 0.5 * ratio + std::cos(x)));
}

double wigner_smith_delay(const std::function<double(double)>& phase, double E, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("wigner_smith_delay requires h > 0");
  return -(phase(E + h) - phase(E - h)) / (2.0 * h);
}

double hole_spin_rotation(const MatrixElementPair& m, double dE, double t, AngleMode mode) {
  require_nonzero(m);
  if (!(t >= 0.0)) throw std::domain_error("hole_spin_rotation requires t >= 0");
  const double d13 = std::arg(m.amp_lower) - std::arg(m.amp_upper);
  const double ratio = std::abs(m.amp_upper) / std::abs(m.amp_lower);
  const double x = dE * t - d13;
  const double angle = std::atan2(std::sin(x), 0.5 * ratio + std::cos(x));
  if (mode == AngleMode::Wrapped || 0.5 * ratio >= 1.0) return wrap(angle);
  // 0.5 ratio + e^{ix} = e^{ix} (1 + 0.5 ratio e^{-ix}) encircles the origin;
  // the second factor stays in the right half plane, so this form is continuous
  const double q = 0.5 * ratio;
  return x + std::atan2(-q * std::sin(x), 1.0 + q * std::cos(x));
}

std::vector<double> hole_spin_rotation_series(const MatrixElementPair& m, double dE, const std::vector<double>& t) {
  std::vector<double> out;
  out.reserve(t.size());
  for (double ti : t) out.push_back(hole_spin_rotation(m, dE, ti, AngleMode::Accumulated));
  return out;
}

Delays extract_times(double dphi_c, double dphi_d, double dE) {
  if (!(dE > 0.0)) throw std::domain_error("extract_times requires a positive splitting");
  return {-dphi_c / dE, -dphi_d / dE};
}

double attoclock_offset(double tau_si, double omega) {
  if (!(omega > 0.0)) throw std::domain_error("attoclock_offset requires omega > 0");
  return omega * std::abs(tau_si);
}

ClockReading ClockReading::from_phases(double dphi_c, double dphi_d, double xi, double dE, double ratio) {
  const Delays d = extract_times(dphi_c, dphi_d, dE);
  ClockReading r;
  r.dphi13_c = dphi_c;
  r.dphi13_d = dphi_d;
  r.tau_si = d.tau_si;
  r.tau_eh = d.tau_eh;
  r.xi_so = xi;
  r.dphi_so = hole_spin_rotation({Complex(ratio, 0.0), std::polar(1.0, dphi_c + dphi_d)}, dE, 0.0);
  return r;
}

double ClockReading::tau_si_as() const { return units::au_to_as(tau_si); }
double ClockReading::tau_eh_as() const { return units::au_to_as(tau_eh); }

}  // namespace larmor::clock
