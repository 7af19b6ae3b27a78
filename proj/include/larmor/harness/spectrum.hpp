#pragma once

// ARM-exponent photoelectron momentum maps and the attoclock offset angle.

#include <functional>
#include <vector>

#include "larmor/armphase.hpp"
#include "larmor/atomic.hpp"
#include "larmor/harness/config.hpp"
#include "larmor/pulse.hpp"

namespace larmor::harness {

/// exp(-2 (Ip Im ts - Im S_V)) for channel ch, times |p| with the 2D volume element.
double arm_weight(const pulse::PulseSpec& spec, const atomic::ChannelSpec& ch, Vec2 p, bool volume_element = true,
                  const saddle::Tolerances& tol = {});

struct SpectrumMap {
  std::vector<double> p_r;
  std::vector<double> p_phi;
  std::vector<double> weight;  // row-major [i_r * p_phi.size() + j_phi], max normalised to 1
  bool includes_volume_element = true;
  bool core_potential = true;
  pulse::Envelope weight_envelope = pulse::Envelope::Cos4;

  double at(std::size_t i, std::size_t j) const { return weight[i * p_phi.size() + j]; }
};

struct SpectrumOptions {
  bool volume_element = true;
  bool core_potential = true;
  armphase::PhaseOptions phase;
};

/// Momentum map of the lower channel. The ionisation weight comes from the
/// ARM exponent of the Cos4 version of the pulse (a monochromatic circular
/// field is angle degenerate); the core potential enters as the angular
/// shift s w tau_SI(p_r) of the peak, tau_SI from the envelope-free pulse.
/// Without core potential the shift is zero.
SpectrumMap spectrum_map(const pulse::PulseSpec& spec, const atomic::ChannelPair& pair, const MomentumGridSpec& grid,
                         const SpectrumOptions& opt = {});

/// tau_SI(p_r) = -dphi_c/dE along +x, envelope-free pulse (atomic units).
double radial_ionisation_delay(const pulse::PulseSpec& spec, const atomic::ChannelPair& pair, double p_r,
                               const armphase::PhaseOptions& opt = {});

struct Peak {
  double p_r;
  double p_phi;
  double weight;
};
/// Global maximum with parabolic sub-grid refinement; throws std::domain_error on a flat map.
Peak spectrum_peak(const SpectrumMap& map);

/// Peak angle of map minus the peak angle of the zero-core-potential reference.
double offset_angle(const SpectrumMap& map, const SpectrumMap& reference);
/// Builds both maps and returns the offset.
double offset_angle(const pulse::PulseSpec& spec, const atomic::ChannelPair& pair, const MomentumGridSpec& grid,
                    const SpectrumOptions& opt = {});

}  // namespace larmor::harness
