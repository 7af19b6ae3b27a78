#include "larmor/harness/config.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "larmor/units.hpp"

namespace larmor::harness {

namespace fs = std::filesystem;

std::string to_string(SweepKind k) {
  switch (k) {
    case SweepKind::Wavelength: return "wavelength";
    case SweepKind::Intensity: return "intensity";
    case SweepKind::Momentum: return "momentum";
    case SweepKind::PumpProbe: return "pumpprobe";
    case SweepKind::Single: return "single";
  }
  throw std::logic_error("unhandled sweep kind");
}

SweepKind sweep_kind_from_string(const std::string& s) {
  for (auto k : {SweepKind::Wavelength, SweepKind::Intensity, SweepKind::Momentum, SweepKind::PumpProbe,
                 SweepKind::Single})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown sweep type '" + s + "'");
}

std::vector<double> Grid1D::values() const {
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (count == 1) return {min};
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = min + (max - min) * i / (count - 1);
  return v;
}

namespace {

Grid1D grid_from_json(const json& j, double scale = 1.0) {
  Grid1D g;
  g.min = j.at("min").get<double>() * scale;
  g.max = j.at("max").get<double>() * scale;
  g.count = j.at("count").get<int>();
  if (g.count < 1) throw std::invalid_argument("grid count must be >= 1");
  return g;
}

std::vector<double> values_or_grid(const json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  return grid_from_json(j).values();
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 2) throw std::invalid_argument("complex values are [re, im]");
  return {v[0], v[1]};
}

}  // namespace

atomic::ChannelPair split_channel(const atomic::ChannelSpec& ch, double split) {
  if (!(split > 0.0) || !(ch.ip > 0.5 * split)) throw std::invalid_argument("invalid channel split");
  atomic::ChannelSpec lo = ch;
  atomic::ChannelSpec hi = ch;
  lo.ip = ch.ip - 0.5 * split;
  hi.ip = ch.ip + 0.5 * split;
  return {lo, hi};
}

atomic::ChannelPair channels_from_json(const json& j, const std::string& base_dir) {
  if (j.is_string()) {
    fs::path p = j.get<std::string>();
    if (p.is_relative()) p = fs::path(base_dir) / p;
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open channel file " + p.string());
    return channels_from_json(json::parse(in), p.parent_path().string());
  }
  if (j.contains("preset")) {
    const auto name = j.at("preset").get<std::string>();
    if (name == "krypton") return atomic::krypton_pair(j.value("MJ2", 1));
    if (name == "hydrogen") {
      atomic::ChannelSpec h{atomic::HalfInt::integer(0), atomic::HalfInt::from_twice(1),
                            atomic::HalfInt::from_twice(1), 0.5, 1.0, 0.0};
      return split_channel(h, j.value("split_hartree", 0.02444));
    }
    throw std::invalid_argument("unknown channel preset '" + name + "'");
  }
  if (j.contains("channel")) return split_channel(atomic::channel_from_json(j.at("channel")), j.value("split_hartree", 0.02444));
  return atomic::channel_pair_from_json(j);
}

PulseSource pulse_from_json(const json& j) {
  PulseSource p{};
  if (j.contains("F_au")) p.field = j.at("F_au").get<double>();
  else if (j.contains("intensity_Wcm2")) p.field = pulse::intensity_to_field(j.at("intensity_Wcm2").get<double>());
  else throw std::invalid_argument("pulse needs F_au or intensity_Wcm2");
  if (j.contains("omega_au")) p.omega = j.at("omega_au").get<double>();
  else if (j.contains("wavelength_nm")) p.omega = units::convert_units(j.at("wavelength_nm").get<double>(), units::Unit::Nanometer, units::Unit::AuFrequency);
  else p.omega = 0.0;  // supplied by a wavelength sweep
  p.envelope = pulse::envelope_from_string(j.value("envelope", std::string("flat")));
  p.helicity = pulse::helicity_from_string(j.value("helicity", std::string("right")));
  if (!(p.field > 0.0)) throw std::invalid_argument("pulse field must be positive");
  return p;
}

void apply_tolerances(armphase::PhaseOptions& opt, const json& tol) {
  for (auto it = tol.begin(); it != tol.end(); ++it) {
    const auto& k = it.key();
    const auto& v = it.value();
    if (k == "saddle_tol") opt.tol.saddle_tol = v.get<double>();
    else if (k == "quad_tol") opt.tol.quad_tol = v.get<double>();
    else if (k == "max_iter") opt.tol.max_iter = v.get<int>();
    else if (k == "T_cycles") opt.T_cycles = v.get<double>();
    else if (k == "T_max_doublings") opt.T_max_doublings = v.get<int>();
    else if (k == "r_min") opt.r_min = v.get<double>();
    else if (k == "T_tol") opt.T_tol = v.get<double>();
    else if (k == "richardson_tol") opt.richardson_tol = v.get<double>();
    else throw std::invalid_argument("unknown tolerance key '" + k + "'");
  }
  if (!(opt.tol.saddle_tol > 0.0) || !(opt.tol.quad_tol > 0.0) || opt.tol.max_iter < 1 || !(opt.T_cycles > 0.0) ||
      opt.T_max_doublings < 0 || !(opt.r_min > 0.0))
    throw std::invalid_argument("tolerances out of range");
}

void apply_tolerance_override(json& config, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--tol-override expects key=value, got '" + kv + "'");
  const std::string key = kv.substr(0, eq);
  const std::string val = kv.substr(eq + 1);
  armphase::PhaseOptions probe;
  json value;
  try {
    std::size_t used = 0;
    const double d = std::stod(val, &used);
    if (used != val.size()) throw std::invalid_argument(val);
    value = (key == "max_iter" || key == "T_max_doublings") ? json(static_cast<int>(d)) : json(d);
  } catch (const std::exception&) {
    throw std::invalid_argument("tolerance override '" + kv + "' needs a numeric value");
  }
  apply_tolerances(probe, json{{key, value}});  // validates the key
  config["tolerances"][key] = value;
}

json tolerances_to_json(const armphase::PhaseOptions& o) {
  return {{"saddle_tol", o.tol.saddle_tol}, {"quad_tol", o.tol.quad_tol},   {"max_iter", o.tol.max_iter},
          {"T_cycles", o.T_cycles},         {"T_max_doublings", o.T_max_doublings}, {"r_min", o.r_min},
          {"T_tol", o.T_tol},               {"richardson_tol", o.richardson_tol}};
}

RunConfig parse_config(const json& j, const std::string& base_dir) {
  RunConfig c;
  c.raw = j;
  c.pulse = pulse_from_json(j.at("pulse"));
  if (j.contains("channels")) c.channels = channels_from_json(j.at("channels"), base_dir);
  if (j.contains("tolerances")) apply_tolerances(c.phase, j.at("tolerances"));

  const json sweep = j.value("sweep", json{{"type", "single"}});
  c.sweep = sweep_kind_from_string(sweep.value("type", std::string("single")));
  if (sweep.contains("p")) {
    const auto p = sweep.at("p").get<std::vector<double>>();
    if (p.size() != 2) throw std::invalid_argument("sweep.p is [px, py]");
    c.momentum_override = Vec2{p[0], p[1]};
  }
  switch (c.sweep) {
    case SweepKind::Wavelength:
      c.N_values = values_or_grid(sweep.at("N"));
      for (double n : c.N_values)
        if (!(n > 0.0)) throw std::invalid_argument("photon numbers N must be positive");
      break;
    case SweepKind::Intensity:
      c.intensities = values_or_grid(sweep.at("intensity_Wcm2"));
      break;
    case SweepKind::Momentum:
      c.momentum.p_r = grid_from_json(sweep.at("p_r"));
      c.momentum.p_phi = grid_from_json(sweep.at("p_phi_deg"), units::kPi / 180.0);
      c.momentum.volume_element = sweep.value("volume_element", true);
      c.momentum.phase_threshold = sweep.value("phase_threshold", 0.5);
      break;
    case SweepKind::PumpProbe:
      c.tau_values = values_or_grid(sweep.at("tau_au"));
      break;
    case SweepKind::Single:
      break;
  }
  if (c.sweep != SweepKind::Wavelength && !(c.pulse.omega > 0.0))
    throw std::invalid_argument("pulse needs omega_au or wavelength_nm");

  if (j.contains("probe")) {
    const auto& p = j.at("probe");
    c.probe.omega3 = p.value("omega3_hartree", 0.0);
    c.probe.center = p.value("center_hartree", c.probe.omega3);
    c.probe.bandwidth = p.value("bandwidth_hartree", 0.5);
    c.probe.d_half = p.value("d_half", 1.0);
    c.probe.d_threehalf = p.value("d_threehalf", 1.0);
    if (p.contains("T1_minus")) {
      c.probe.pump = pumpprobe::PumpAmplitudes{complex_from_json(p.at("T1_minus")), complex_from_json(p.at("T3_minus")),
                                               complex_from_json(p.value("T3_minus_spin_up", json(0.0)))};
    }
  }
  if (j.contains("output")) {
    c.output_dir = j.at("output").value("dir", c.output_dir);
    c.output_name = j.at("output").value("name", c.output_name);
  }
  c.threads = j.value("threads", 0);
  return c;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& tol_overrides) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j = json::parse(in);
  for (const auto& kv : tol_overrides) apply_tolerance_override(j, kv);
  return parse_config(j, fs::path(path).parent_path().string());
}

}  // namespace larmor::harness
