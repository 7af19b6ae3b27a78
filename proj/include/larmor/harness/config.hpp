#pragma once

// Run configuration: a JSON document describing the pulse, the channel pair,
// the sweep and the numerical tolerances.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "larmor/armphase.hpp"
#include "larmor/atomic.hpp"
#include "larmor/pulse.hpp"
#include "larmor/pumpprobe.hpp"

namespace larmor::harness {

using nlohmann::json;

enum class SweepKind { Wavelength, Intensity, Momentum, PumpProbe, Single };

std::string to_string(SweepKind k);
SweepKind sweep_kind_from_string(const std::string& s);

struct Grid1D {
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  std::vector<double> values() const;
};

struct MomentumGridSpec {
  Grid1D p_r;
  Grid1D p_phi;  // radians
  bool volume_element = true;
  double phase_threshold = 0.5;  // phases only where weight >= threshold (0 = everywhere)
};

struct ProbeConfig {
  double center = 0.0;
  double bandwidth = 0.5;
  double omega3 = 0.0;
  double d_half = 1.0;
  double d_threehalf = 1.0;
  std::optional<pumpprobe::PumpAmplitudes> pump;  // else derived from the computed phase
};

struct PulseSource {
  double field;  // a.u.
  double omega;  // a.u.
  pulse::Envelope envelope = pulse::Envelope::Flat;
  pulse::Helicity helicity = pulse::Helicity::Right;
  pulse::PulseSpec spec() const { return {field, omega, envelope, helicity}; }
};

struct RunConfig {
  json raw;  // canonical form, used for hashing
  PulseSource pulse;
  atomic::ChannelPair channels = atomic::krypton_pair();
  SweepKind sweep = SweepKind::Single;
  std::vector<double> N_values;          // wavelength sweep: w = Ip_lower / N
  std::vector<double> intensities;       // W/cm^2
  MomentumGridSpec momentum;
  std::vector<double> tau_values;        // pump-probe delays, a.u.
  std::optional<Vec2> momentum_override; // single point / sweeps at fixed p instead of p0
  armphase::PhaseOptions phase;
  ProbeConfig probe;
  std::string output_dir = "out";
  std::string output_name = "run";
  int threads = 0;                       // 0 = hardware concurrency
};

/// Channel pair from a config node: inline {lower, upper}, a path to a JSON
/// file, {"preset": "krypton" | "hydrogen"}, or {"channel": {...},
/// "split_hartree": d} for a single channel split symmetrically.
atomic::ChannelPair channels_from_json(const json& j, const std::string& base_dir = ".");

/// One channel (e.g. hydrogen) as a pair split by +-d/2 around its Ip.
atomic::ChannelPair split_channel(const atomic::ChannelSpec& ch, double split = 0.02444);

PulseSource pulse_from_json(const json& j);
void apply_tolerances(armphase::PhaseOptions& opt, const json& tol);
/// "key=value" overrides for tolerance keys; throws std::invalid_argument for unknown keys.
void apply_tolerance_override(json& config, const std::string& kv);

RunConfig parse_config(const json& j, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path, const std::vector<std::string>& tol_overrides = {});

json tolerances_to_json(const armphase::PhaseOptions& opt);

}  // namespace larmor::harness
