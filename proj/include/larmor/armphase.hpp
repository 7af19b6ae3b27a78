#pragma once

// Phase accumulated in the core potential along the complex-time trajectory
//   phi = Re int_{ts - i/kappa^2}^{T} dt U(r(t)),  r(t) = int_{ts}^{t} v dz,
// on the contour ts - i/kappa^2 -> Re ts -> T, and the channel differences
// built from it.

#include <functional>
#include <utility>

#include "larmor/atomic.hpp"
#include "larmor/pulse.hpp"
#include "larmor/saddle.hpp"

namespace larmor::armphase {

using atomic::ChannelPair;
using atomic::ChannelSpec;
using pulse::PulseSpec;

/// U(x, r): potential at complex displacement x with complex radius r.
using Potential = std::function<Complex(const CVec2& x, Complex r)>;

Potential coulomb(double charge = 1.0);
/// In-plane V_lower - V_upper from the multipole tails of the pair
/// (-<R_2>/(10 r^3) for a p-shell pair).
Potential short_range_difference(const ChannelPair& pair);

struct PhaseOptions {
  saddle::Tolerances tol;
  double T_cycles = 20.0;
  int T_max_doublings = 8;
  double r_min = 0.1;
  double T_tol = 1e-4;         // T-doubling criterion on the channel differences
  double richardson_tol = 1e-4;
  int samples_per_cycle = 64;  // branch-check sampling on the real axis
};

struct ChannelPhase {
  Complex total{};
  Complex vertical{};    // ts - i/kappa^2 -> Re ts
  Complex horizontal{};  // Re ts -> T
  saddle::SaddleSolution saddle;
  double T = 0.0;
};

/// Contour integral for one channel. Throws BranchCutError when the
/// trajectory radius leaves the principal sheet or comes within r_min of 0.
ChannelPhase channel_phase(const PulseSpec& spec, double ip, Vec2 p, const Potential& U, double T,
                           const PhaseOptions& opt = {});
ChannelPhase channel_phase(const PulseSpec& spec, const ChannelSpec& ch, Vec2 p, const Potential& U, double T,
                           const PhaseOptions& opt = {});

/// Incrementally extendable phase integral, so T-doubling reuses work.
class PhaseAccumulator {
 public:
  PhaseAccumulator(const PulseSpec& spec, double ip, Vec2 p, Potential U, const PhaseOptions& opt);
  const saddle::SaddleSolution& saddle() const { return phase_.saddle; }
  /// integrates (T, T_new]; T_new >= current T
  void extend_to(double T_new);
  const ChannelPhase& phase() const { return phase_; }

 private:
  PulseSpec spec_;
  Potential U_;
  PhaseOptions opt_;
  ChannelPhase phase_;
};

struct CoulombDifference {
  double value = 0.0;                     // phi_c(upper) - phi_c(lower)
  double derivative = 0.0;                // d phi_c / d Ip at the mean Ip
  double under_barrier = 0.0;             // vertical-segment part of value
  double under_barrier_derivative = 0.0;  // vertical-segment part of derivative
  double T_obs = 0.0;
  bool converged = false;
};

struct PhaseBreakdown {
  double phi_c = 0.0;  // Delta phi^c_13
  double phi_d = 0.0;  // Delta phi^d_13
  double xi_so = 0.0;
  double under_barrier_c = 0.0;
  double dphi_c_dip = 0.0;
  double under_barrier_dphi_c_dip = 0.0;
  double T_obs = 0.0;
  bool converged = false;
};

CoulombDifference delta_phi_c(const PulseSpec& spec, const ChannelPair& pair, Vec2 p, const PhaseOptions& opt = {});
/// Short-range difference on the single mean-Ip trajectory.
double delta_phi_d(const PulseSpec& spec, const ChannelPair& pair, Vec2 p, const PhaseOptions& opt = {});
/// Both differences with a shared observation time and joint T-doubling.
PhaseBreakdown compute_phases(const PulseSpec& spec, const ChannelPair& pair, Vec2 p, const PhaseOptions& opt = {});

/// -0.42 (l + 1/2) / c^2 * F^2 / Ip^(5/2)
double xi_so(double F, double ip, int l);
/// int_0^inf of -(l + 1/2) / (2 c^2 r^3) along r = Ip/F + F t^2 / 2
double xi_so_numeric(double F, double ip, int l);

/// (-dE / Ip^(3/2), -0.4 F^2 / Ip^(5/2))
std::pair<double, double> tunnelling_limit_phases(double F, double ip, double dE);

}  // namespace larmor::armphase
