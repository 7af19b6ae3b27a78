#pragma once

// Spin-orbit interferometer: rotation of the hole (or photoelectron) spin from
// the relative phase of the j = 3/2 and j = 1/2 pathways, and the times read
// off from it.

#include <functional>
#include <utility>
#include <vector>

#include "larmor/vec.hpp"

namespace larmor::clock {

/// amp_upper: R_3 (one-photon) or T_3^- (strong field), the j = 3/2 arm;
/// amp_lower: R_1 or T_1^-, the j = 1/2 arm.
struct MatrixElementPair {
  Complex amp_upper;
  Complex amp_lower;
};

/// Delta phi_SO = arg(a_up conj(a_down)), a_up = R_3, a_down = (R_3 + 2 R_1) / 3.
double one_photon_rotation(const MatrixElementPair& m);
/// Same angle from the tangent form
///   tan = sin(-dphi13) / (0.5 |R_3|/|R_1| + cos dphi13),  dphi13 = arg R_1 - arg R_3.
double one_photon_rotation_tangent(const MatrixElementPair& m);
/// Rotation predicted from a Wigner-Smith time:
///   tan = sin(tau dE) / (0.5 ratio + cos(tau dE)), ratio = |R_3|/|R_1|.
double calibrated_rotation(double tau_ws, double dE, double ratio);

/// tau_WS = -(phi(E + h) - phi(E - h)) / 2h
double wigner_smith_delay(const std::function<double(double)>& phase, double E, double h);

enum class AngleMode { Wrapped, Accumulated };

/// tan = sin(dE t - dphi13) / (0.5 |T_3|/|T_1| + cos(dE t - dphi13)).
/// Wrapped returns (-pi, pi]; Accumulated is continuous in t and adds 2 pi
/// per modulation period whenever the rotation winds.
double hole_spin_rotation(const MatrixElementPair& m, double dE, double t, AngleMode mode = AngleMode::Wrapped);
std::vector<double> hole_spin_rotation_series(const MatrixElementPair& m, double dE, const std::vector<double>& t);

struct Delays {
  double tau_si;
  double tau_eh;
};
/// tau_SI = -dphi_c / dE, tau_eh = -dphi_d / dE (atomic units). dE must be > 0.
Delays extract_times(double dphi_c, double dphi_d, double dE);

/// w |tau_SI|
double attoclock_offset(double tau_si, double omega);

struct ClockReading {
  double dphi_so = 0.0;
  double dphi13_c = 0.0;
  double dphi13_d = 0.0;
  double tau_si = 0.0;
  double tau_eh = 0.0;
  double xi_so = 0.0;

  /// Reading for channel phases; the rotation uses T_1 / T_3 with modulus
  /// ratio |T_3|/|T_1| = ratio and relative phase dphi_c + dphi_d.
  static ClockReading from_phases(double dphi_c, double dphi_d, double xi, double dE, double ratio = 1.0);
  double tau_si_as() const;
  double tau_eh_as() const;
};

}  // namespace larmor::clock
