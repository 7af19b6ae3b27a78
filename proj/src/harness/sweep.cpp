#include "larmor/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "larmor/clock.hpp"
#include "larmor/harness/cache.hpp"
#include "larmor/harness/spectrum.hpp"
#include "larmor/saddle.hpp"
#include "larmor/units.hpp"
#include "larmor/version.hpp"

namespace larmor::harness {

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed(); }));
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SweepRow evaluate_point(const pulse::PulseSpec& spec, const atomic::ChannelPair& pair,
                        const armphase::PhaseOptions& opt, std::optional<Vec2> p) {
  SweepRow row;
  row.omega = spec.omega();
  row.field = spec.field();
  try {
    row.gamma = saddle::keldysh_gamma(spec, pair.lower().ip);
    row.xi_so = armphase::xi_so(spec.field(), pair.lower().ip, pair.lower().L.twice / 2);
    const double p0 = saddle::characteristic_momentum(spec, pair.mean_ip(), opt.tol);
    row.p0 = p0;
    const Vec2 mom = p.value_or(Vec2{p0, 0.0});
    const auto sol = saddle::solve_saddle(spec, mom, pair.mean_ip(), opt.tol);
    row.r0 = sol.r0.norm();
    const auto b = armphase::compute_phases(spec, pair, mom, opt);
    const auto d = clock::extract_times(b.phi_c, b.phi_d, pair.splitting());
    row.dphi_c = b.phi_c;
    row.dphi_d = b.phi_d;
    row.dphi_total = b.phi_c + b.phi_d;
    row.tau_si_as = units::au_to_as(d.tau_si);
    row.tau_eh_as = units::au_to_as(d.tau_eh);
    row.under_barrier_c = b.under_barrier_c;
    row.converged = b.converged;
  } catch (const std::exception& e) {
    row.dphi_c = row.dphi_d = row.dphi_total = row.tau_si_as = row.tau_eh_as = row.under_barrier_c = std::nullopt;
    row.converged = false;
    row.status = e.what();
    if (row.status.empty() || row.status == "ok" || row.status == "skipped") row.status = "error";
  }
  return row;
}

json canonical_config(const RunConfig& cfg) {
  json j = cfg.raw;
  j["channels"] = {{"lower", atomic::channel_to_json(cfg.channels.lower())},
                   {"upper", atomic::channel_to_json(cfg.channels.upper())}};
  j["tolerances"] = tolerances_to_json(cfg.phase);
  j.erase("output");
  j.erase("threads");
  j["version"] = version();
  return j;
}

std::string config_hash(const RunConfig& cfg) { return sha256_hex(canonical_config(cfg).dump()); }

namespace {

std::vector<SweepRow> run_points(const std::vector<pulse::PulseSpec>& specs, const RunConfig& cfg, int threads) {
  std::vector<SweepRow> rows(specs.size());
  parallel_for(specs.size(), threads, [&](std::size_t i) {
    rows[i] = evaluate_point(specs[i], cfg.channels, cfg.phase, cfg.momentum_override);
    rows[i].index = i;
  });
  return rows;
}

SweepResult momentum_sweep(const RunConfig& cfg, int threads) {
  SweepResult res;
  const auto spec = cfg.pulse.spec();
  SpectrumOptions so;
  so.volume_element = cfg.momentum.volume_element;
  so.phase = cfg.phase;
  const SpectrumMap map = spectrum_map(spec, cfg.channels, cfg.momentum, so);
  so.core_potential = false;
  const SpectrumMap ref = spectrum_map(spec, cfg.channels, cfg.momentum, so);
  const std::size_t nphi = map.p_phi.size();
  res.rows.resize(map.weight.size());
  parallel_for(map.weight.size(), threads, [&](std::size_t k) {
    const double pr = map.p_r[k / nphi];
    const double phi = map.p_phi[k % nphi];
    SweepRow row;
    if (map.weight[k] >= cfg.momentum.phase_threshold) {
      row = evaluate_point(spec, cfg.channels, cfg.phase, Vec2::polar(pr, phi));
    } else {
      row.omega = spec.omega();
      row.field = spec.field();
      row.status = "skipped";
    }
    row.index = k;
    row.p_r = pr;
    row.p_phi = phi;
    row.weight = map.weight[k];
    res.rows[k] = row;
  });

  double lo = INFINITY, hi = -INFINITY;
  std::size_t in_fwhm = 0;
  for (const auto& r : res.rows)
    if (r.weight && *r.weight >= 0.5 && r.tau_si_as) {
      lo = std::min(lo, *r.tau_si_as);
      hi = std::max(hi, *r.tau_si_as);
      ++in_fwhm;
    }
  const Peak pk = spectrum_peak(map);
  const double offset = offset_angle(map, ref);
  res.summary = {{"peak_p_r", pk.p_r},
                 {"peak_p_phi_rad", pk.p_phi},
                 {"offset_angle_rad", offset},
                 {"weight_envelope", "cos4"},
                 {"fwhm_points", in_fwhm},
                 {"tau_si_spread_fwhm_as", in_fwhm ? json(hi - lo) : json(nullptr)}};
  return res;
}

SweepResult pumpprobe_sweep(const RunConfig& cfg) {
  SweepResult res;
  const double dE = cfg.channels.splitting();
  pumpprobe::PumpAmplitudes pump{};
  double injected = 0.0;
  if (cfg.probe.pump) {
    pump = *cfg.probe.pump;
    injected = std::arg(pump.T1_minus) - std::arg(pump.T3_minus);
  } else {
    SweepRow r = evaluate_point(cfg.pulse.spec(), cfg.channels, cfg.phase, cfg.momentum_override);
    if (!r.dphi_total) throw std::runtime_error("pump-probe: channel phase evaluation failed: " + r.status);
    injected = *r.dphi_total;
    pump = {std::polar(1.0, injected), 1.0, 0.0};
    res.rows.push_back(r);
  }
  const auto probe = pumpprobe::ProbeSpec::tuned(cfg.probe.center, cfg.probe.bandwidth, cfg.probe.omega3, dE,
                                                 cfg.probe.d_half, cfg.probe.d_threehalf);
  const auto amps = pumpprobe::pathway_amplitudes(pump, probe);
  res.trace = pumpprobe::synthesize_trace(amps, dE, cfg.tau_values);
  const auto fit = pumpprobe::recover_phase(res.trace, dE);
  res.summary = {{"injected_dphi13", std::remainder(injected, 2.0 * units::kPi)},
                 {"recovered_dphi13", fit.dphi13},
                 {"contrast", fit.contrast},
                 {"modulation_period_au", 2.0 * units::kPi / dE},
                 {"modulation_period_fs", units::convert_units(2.0 * units::kPi / dE, units::Unit::AuTime, units::Unit::Femtosecond)}};
  return res;
}

}  // namespace

SweepResult run_sweep(const RunConfig& cfg, const RunOptions& ropt) {
  const std::string hash = config_hash(cfg);
  const std::string cache_dir =
      ropt.cache_dir.empty() ? (std::filesystem::path(cfg.output_dir) / ".cache").string() : ropt.cache_dir;
  ResultCache cache(cache_dir);
  if (ropt.use_cache) {
    if (auto hit = cache.load(hash)) {
      hit->from_cache = true;
      return *hit;
    }
  }

  const auto t0 = std::chrono::steady_clock::now();
  const int threads = ropt.threads > 0 ? ropt.threads : cfg.threads;
  SweepResult res;
  switch (cfg.sweep) {
    case SweepKind::Wavelength: {
      std::vector<pulse::PulseSpec> specs;
      for (double n : cfg.N_values)
        specs.push_back({cfg.pulse.field, cfg.channels.lower().ip / n, cfg.pulse.envelope, cfg.pulse.helicity});
      res.rows = run_points(specs, cfg, threads);
      for (std::size_t i = 0; i < res.rows.size(); ++i) res.rows[i].N = cfg.N_values[i];
      break;
    }
    case SweepKind::Intensity: {
      std::vector<pulse::PulseSpec> specs;
      for (double I : cfg.intensities)
        specs.push_back({pulse::intensity_to_field(I), cfg.pulse.omega, cfg.pulse.envelope, cfg.pulse.helicity});
      res.rows = run_points(specs, cfg, threads);
      for (std::size_t i = 0; i < res.rows.size(); ++i) res.rows[i].intensity_wcm2 = cfg.intensities[i];
      break;
    }
    case SweepKind::Momentum:
      res = momentum_sweep(cfg, threads);
      break;
    case SweepKind::PumpProbe:
      res = pumpprobe_sweep(cfg);
      break;
    case SweepKind::Single:
      res.rows = run_points({cfg.pulse.spec()}, cfg, threads);
      break;
  }
  res.kind = cfg.sweep;
  res.config_hash = hash;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  cache.store(res);  // refreshed even when reading was disabled
  return res;
}

}  // namespace larmor::harness
