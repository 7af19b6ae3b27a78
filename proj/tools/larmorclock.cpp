// larmorclock: command-line front end for the spin-orbit clock library.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "larmor/armphase.hpp"
#include "larmor/clock.hpp"
#include "larmor/harness/config.hpp"
#include "larmor/harness/output.hpp"
#include "larmor/harness/spectrum.hpp"
#include "larmor/harness/sweep.hpp"
#include "larmor/pumpprobe.hpp"
#include "larmor/saddle.hpp"
#include "larmor/units.hpp"
#include "larmor/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace larmor;

namespace {

struct Globals {
  std::string config;
  std::string out;
  bool no_cache = false;
  std::vector<std::string> tol_overrides;
  int threads = 0;
};

struct PulseFlags {
  std::optional<double> field, intensity, omega, wavelength;
  std::optional<std::string> envelope, helicity, channels;
};

void add_pulse_flags(CLI::App* app, PulseFlags& f) {
  app->add_option("--field", f.field, "peak field amplitude [a.u.]");
  app->add_option("--intensity", f.intensity, "peak intensity [W/cm^2]");
  app->add_option("--omega", f.omega, "laser frequency [a.u.]");
  app->add_option("--wavelength", f.wavelength, "laser wavelength [nm]");
  app->add_option("--envelope", f.envelope, "flat | cos4");
  app->add_option("--helicity", f.helicity, "right | left");
  app->add_option("--channels", f.channels, "channel file, or preset krypton | hydrogen");
}

json base_config(const Globals& g) {
  if (g.config.empty())
    return {{"pulse", {{"intensity_Wcm2", 2.5e14}, {"wavelength_nm", 800.0}}}, {"channels", {{"preset", "krypton"}}}};
  std::ifstream in(g.config);
  if (!in) throw std::runtime_error("cannot open config " + g.config);
  return json::parse(in);
}

harness::RunConfig make_config(const Globals& g, const PulseFlags& f, const json& sweep = nullptr) {
  json j = base_config(g);
  json& p = j["pulse"];
  if (f.field || f.intensity) {
    p.erase("F_au");
    p.erase("intensity_Wcm2");
  }
  if (f.field) p["F_au"] = *f.field;
  if (f.intensity) p["intensity_Wcm2"] = *f.intensity;
  if (f.omega || f.wavelength) {
    p.erase("omega_au");
    p.erase("wavelength_nm");
  }
  if (f.omega) p["omega_au"] = *f.omega;
  if (f.wavelength) p["wavelength_nm"] = *f.wavelength;
  if (f.envelope) p["envelope"] = *f.envelope;
  if (f.helicity) p["helicity"] = *f.helicity;
  if (f.channels) {
    if (*f.channels == "krypton" || *f.channels == "hydrogen") j["channels"] = {{"preset", *f.channels}};
    else j["channels"] = fs::absolute(*f.channels).string();
  }
  if (!sweep.is_null()) j["sweep"] = sweep;
  if (!g.out.empty()) j["output"]["dir"] = g.out;
  for (const auto& kv : g.tol_overrides) harness::apply_tolerance_override(j, kv);
  const std::string base = g.config.empty() ? "." : fs::path(g.config).parent_path().string();
  return harness::parse_config(j, base);
}

void emit_json(const Globals& g, const json& j, const std::string& name) {
  if (g.out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  fs::create_directories(g.out);
  harness::write_file_atomic((fs::path(g.out) / (name + ".json")).string(), j.dump(2) + "\n");
  std::cout << (fs::path(g.out) / (name + ".json")).string() << '\n';
}

Complex parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  in >> re;
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw std::invalid_argument("complex values are written re,im");
  }
  return {re, im};
}

Vec2 momentum_or_p0(const pulse::PulseSpec& spec, double ip, std::optional<double> px, std::optional<double> py,
                    const saddle::Tolerances& tol) {
  if (px || py) return {px.value_or(0.0), py.value_or(0.0)};
  return {saddle::characteristic_momentum(spec, ip, tol), 0.0};
}

json phases_json(const armphase::PhaseBreakdown& b) {
  return {{"dphi_c", b.phi_c},
          {"dphi_d", b.phi_d},
          {"xi_so", b.xi_so},
          {"under_barrier_c", b.under_barrier_c},
          {"dphi_c_dIp", b.dphi_c_dip},
          {"under_barrier_dphi_c_dIp", b.under_barrier_dphi_c_dip},
          {"T_obs_au", b.T_obs},
          {"converged", b.converged}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-orbit Larmor clock: strong-field and one-photon ionisation delays"};
  app.set_version_flag("--version", std::string(larmor::version()));
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output directory");
  app.add_flag("--no-cache", g.no_cache, "recompute even when a cached result exists");
  app.add_option("--tol-override", g.tol_overrides, "tolerance override key=value (repeatable)");
  app.add_option("--threads", g.threads, "worker threads for sweeps (0 = all cores)");

  // saddle
  PulseFlags sf;
  std::optional<double> s_ip, s_px, s_py;
  auto* saddle_cmd = app.add_subcommand("saddle", "saddle-point time, tunnelling time and exit point");
  add_pulse_flags(saddle_cmd, sf);
  saddle_cmd->add_option("--ip", s_ip, "ionisation potential [hartree] (default: mean of the channel pair)");
  saddle_cmd->add_option("--px", s_px, "final momentum x [a.u.] (default: p0 along x)");
  saddle_cmd->add_option("--py", s_py, "final momentum y [a.u.]");

  // phases
  PulseFlags pf;
  std::optional<double> p_px, p_py;
  auto* phases_cmd = app.add_subcommand("phases", "channel phase differences at one momentum");
  add_pulse_flags(phases_cmd, pf);
  phases_cmd->add_option("--px", p_px, "final momentum x [a.u.] (default: p0 along x)");
  phases_cmd->add_option("--py", p_py, "final momentum y [a.u.]");

  // clock
  PulseFlags cf;
  std::optional<std::string> c_r1, c_r3;
  std::optional<double> c_t;
  auto* clock_cmd = app.add_subcommand("clock", "interferometer readings and derived delays");
  add_pulse_flags(clock_cmd, cf);
  clock_cmd->add_option("--r1", c_r1, "j=1/2 matrix element re,im (one-photon mode)");
  clock_cmd->add_option("--r3", c_r3, "j=3/2 matrix element re,im (one-photon mode)");
  clock_cmd->add_option("--time", c_t, "hole-spin rotation at time t after ionisation [a.u.]");

  // pumpprobe
  PulseFlags ppf;
  std::string pp_fit;
  double pp_tau_max = 0.0;
  int pp_count = 200;
  auto* pp_cmd = app.add_subcommand("pumpprobe", "synthesize a pump-probe trace or fit a measured one");
  add_pulse_flags(pp_cmd, ppf);
  pp_cmd->add_option("--fit", pp_fit, "CSV trace (tau_au,w) to fit")->check(CLI::ExistingFile);
  pp_cmd->add_option("--tau-max", pp_tau_max, "largest delay [a.u.] (default: two modulation periods)");
  pp_cmd->add_option("--count", pp_count, "number of delays");

  // spectrum
  PulseFlags spf;
  double pr_min = 0.2, pr_max = 2.0, phi_min = -90.0, phi_max = 90.0;
  int pr_count = 37, phi_count = 61;
  bool no_volume = false;
  auto* spec_cmd = app.add_subcommand("spectrum", "ARM-weighted momentum map and offset angle");
  add_pulse_flags(spec_cmd, spf);
  spec_cmd->add_option("--pr-min", pr_min);
  spec_cmd->add_option("--pr-max", pr_max);
  spec_cmd->add_option("--pr-count", pr_count);
  spec_cmd->add_option("--phi-min-deg", phi_min);
  spec_cmd->add_option("--phi-max-deg", phi_max);
  spec_cmd->add_option("--phi-count", phi_count);
  spec_cmd->add_flag("--no-volume-element", no_volume);

  // sweep
  PulseFlags swf;
  auto* sweep_cmd = app.add_subcommand("sweep", "run the sweep described by --config");
  add_pulse_flags(sweep_cmd, swf);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();  // global options may follow the subcommand
  CLI11_PARSE(app, argc, argv);

  try {
    if (*saddle_cmd) {
      const auto cfg = make_config(g, sf);
      const auto spec = cfg.pulse.spec();
      const double ip = s_ip.value_or(cfg.channels.mean_ip());
      const Vec2 p = momentum_or_p0(spec, ip, s_px, s_py, cfg.phase.tol);
      const auto sol = saddle::solve_saddle(spec, p, ip, cfg.phase.tol);
      emit_json(g,
                {{"p", {p.x, p.y}},
                 {"Ip", ip},
                 {"ts", {sol.ts.real(), sol.ts.imag()}},
                 {"tau_T_au", sol.tau_T},
                 {"r0", {sol.r0.x, sol.r0.y}},
                 {"r0_abs", sol.r0.norm()},
                 {"residual", sol.residual},
                 {"gamma", saddle::keldysh_gamma(spec, ip)},
                 {"p0", saddle::characteristic_momentum(spec, ip, cfg.phase.tol)},
                 {"ionisation_exponent", saddle::ionisation_exponent(spec, sol, cfg.phase.tol)}},
                "saddle");
      return 0;
    }
    if (*phases_cmd) {
      const auto cfg = make_config(g, pf);
      const auto spec = cfg.pulse.spec();
      const Vec2 p = momentum_or_p0(spec, cfg.channels.mean_ip(), p_px, p_py, cfg.phase.tol);
      const auto b = armphase::compute_phases(spec, cfg.channels, p, cfg.phase);
      const auto [tc, td] = armphase::tunnelling_limit_phases(spec.field(), cfg.channels.lower().ip, cfg.channels.splitting());
      json j = phases_json(b);
      j["p"] = {p.x, p.y};
      j["tunnelling_limit"] = {{"dphi_c", tc}, {"dphi_d", td}};
      emit_json(g, j, "phases");
      return b.converged ? 0 : 2;
    }
    if (*clock_cmd) {
      if (c_r1 || c_r3) {
        if (!c_r1 || !c_r3) throw std::invalid_argument("one-photon mode needs both --r1 and --r3");
        const clock::MatrixElementPair m{parse_complex(*c_r3), parse_complex(*c_r1)};
        emit_json(g,
                  {{"dphi_so", clock::one_photon_rotation(m)}, {"dphi_so_tangent", clock::one_photon_rotation_tangent(m)}},
                  "clock");
        return 0;
      }
      const auto cfg = make_config(g, cf);
      const auto spec = cfg.pulse.spec();
      const double dE = cfg.channels.splitting();
      const Vec2 p{saddle::characteristic_momentum(spec, cfg.channels.mean_ip(), cfg.phase.tol), 0.0};
      const auto b = armphase::compute_phases(spec, cfg.channels, p, cfg.phase);
      const auto r = clock::ClockReading::from_phases(b.phi_c, b.phi_d, b.xi_so, dE);
      json j = {{"dphi_so", r.dphi_so},         {"dphi13_c", r.dphi13_c},   {"dphi13_d", r.dphi13_d},
                {"tau_si_au", r.tau_si},        {"tau_eh_au", r.tau_eh},    {"tau_si_as", r.tau_si_as()},
                {"tau_eh_as", r.tau_eh_as()},   {"xi_so", r.xi_so},
                {"attoclock_offset_rad", clock::attoclock_offset(r.tau_si, spec.omega())}};
      if (c_t) {
        const clock::MatrixElementPair m{1.0, std::polar(1.0, b.phi_c + b.phi_d)};
        j["hole_spin_rotation"] = clock::hole_spin_rotation(m, dE, *c_t, clock::AngleMode::Accumulated);
      }
      emit_json(g, j, "clock");
      return 0;
    }
    if (*pp_cmd) {
      if (!pp_fit.empty()) {
        const auto cfg = make_config(g, ppf);
        const auto fit = pumpprobe::recover_phase(pumpprobe::read_trace_file(pp_fit), cfg.channels.splitting());
        emit_json(g, {{"dphi13", fit.dphi13}, {"contrast", fit.contrast}, {"offset", fit.offset}, {"amplitude", fit.amplitude}},
                  "pumpprobe_fit");
        return 0;
      }
      json pre = base_config(g);
      json sweep = pre.contains("sweep") && pre["sweep"].value("type", "") == "pumpprobe" ? pre["sweep"] : json(nullptr);
      if (sweep.is_null()) {
        const double dE = make_config(g, ppf).channels.splitting();
        const double tmax = pp_tau_max > 0.0 ? pp_tau_max : 4.0 * units::kPi / dE;
        sweep = {{"type", "pumpprobe"}, {"tau_au", {{"min", 0.0}, {"max", tmax}, {"count", pp_count}}}};
      }
      auto cfg = make_config(g, ppf, sweep);
      if (!cfg.raw.contains("output") || !cfg.raw["output"].contains("name")) cfg.output_name = "pumpprobe";
      const auto res = harness::run_sweep(cfg, {!g.no_cache, "", g.threads});
      if (g.out.empty()) pumpprobe::write_trace(std::cout, res.trace);
      else harness::emit_outputs(cfg, res, g.out);
      std::cerr << res.summary.dump() << '\n';
      return 0;
    }
    if (*spec_cmd) {
      json sweep = {{"type", "momentum"},
                    {"p_r", {{"min", pr_min}, {"max", pr_max}, {"count", pr_count}}},
                    {"p_phi_deg", {{"min", phi_min}, {"max", phi_max}, {"count", phi_count}}},
                    {"volume_element", !no_volume}};
      json pre = base_config(g);
      if (pre.contains("sweep") && pre["sweep"].value("type", "") == "momentum") sweep = pre["sweep"];
      const auto cfg = make_config(g, spf, sweep);
      const auto spec = cfg.pulse.spec();
      harness::SpectrumOptions so;
      so.volume_element = cfg.momentum.volume_element;
      so.phase = cfg.phase;
      const auto map = harness::spectrum_map(spec, cfg.channels, cfg.momentum, so);
      so.core_potential = false;
      const auto ref = harness::spectrum_map(spec, cfg.channels, cfg.momentum, so);
      const auto pk = harness::spectrum_peak(map);
      const double offset = harness::offset_angle(map, ref);
      const double tau = harness::radial_ionisation_delay(spec, cfg.channels, pk.p_r, cfg.phase);
      json j = {{"peak_p_r", pk.p_r},
                {"peak_p_phi_rad", pk.p_phi},
                {"offset_angle_rad", offset},
                {"offset_angle_deg", offset * 180.0 / units::kPi},
                {"omega_tau_si_rad", clock::attoclock_offset(tau, spec.omega())},
                {"includes_volume_element", map.includes_volume_element},
                {"note", "weights from the ARM exponent of the cos4 pulse; offset from the envelope-free tau_SI"}};
      if (!g.out.empty()) {
        std::ostringstream csv;
        csv << "p_r,p_phi_rad,weight\n";
        for (std::size_t i = 0; i < map.p_r.size(); ++i)
          for (std::size_t k = 0; k < map.p_phi.size(); ++k)
            csv << harness::format_double(map.p_r[i]) << ',' << harness::format_double(map.p_phi[k]) << ','
                << harness::format_double(map.at(i, k)) << '\n';
        harness::write_file_atomic((fs::path(g.out) / "spectrum.csv").string(), csv.str());
      }
      emit_json(g, j, "spectrum");
      return 0;
    }
    if (*sweep_cmd) {
      if (g.config.empty()) throw std::invalid_argument("sweep needs --config");
      const auto cfg = make_config(g, swf);
      const auto res = harness::run_sweep(cfg, {!g.no_cache, "", g.threads});
      const std::string dir = g.out.empty() ? cfg.output_dir : g.out;
      harness::emit_outputs(cfg, res, dir);
      std::cout << (fs::path(dir) / (cfg.output_name + ".csv")).string() << (res.from_cache ? " (cached)" : "") << '\n';
      if (res.failures()) std::cerr << res.failures() << " of " << res.rows.size() << " points failed\n";
      return res.exit_code();
    }
  } catch (const std::exception& e) {
    std::cerr << "larmorclock: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
