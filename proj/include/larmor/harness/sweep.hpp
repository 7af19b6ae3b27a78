#pragma once

// Parameter sweeps: each grid point yields the channel phases, the derived
// delays and the trajectory diagnostics; points are evaluated concurrently
// and gathered in grid order.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "larmor/harness/config.hpp"
#include "larmor/pumpprobe.hpp"

namespace larmor::harness {

struct SweepRow {
  std::size_t index = 0;
  std::optional<double> N, intensity_wcm2, p_r, p_phi;
  double omega = 0.0;
  double field = 0.0;
  std::optional<double> gamma, p0, r0, dphi_c, dphi_d, dphi_total, tau_si_as, tau_eh_as, xi_so, under_barrier_c,
      weight;
  bool converged = false;
  std::string status = "ok";  // "ok", "skipped" (below the weight threshold) or the failure diagnostic

  bool failed() const { return status != "ok" && status != "skipped"; }
};

struct SweepResult {
  SweepKind kind = SweepKind::Single;
  std::vector<SweepRow> rows;
  std::vector<pumpprobe::TraceSample> trace;  // pump-probe sweeps only
  json summary = json::object();
  std::string config_hash;
  bool from_cache = false;
  double seconds = 0.0;

  std::size_t failures() const;
  /// 0 all points ok, 2 some null rows
  int exit_code() const { return failures() ? 2 : 0; }
};

struct RunOptions {
  bool use_cache = true;
  std::string cache_dir;  // empty: <output_dir>/.cache
  int threads = 0;        // overrides the config when > 0
};

/// Phases and delays of the channel pair at momentum p (default p0 along +x).
/// Failures are reported in the row status, never thrown.
SweepRow evaluate_point(const pulse::PulseSpec& spec, const atomic::ChannelPair& pair,
                        const armphase::PhaseOptions& opt, std::optional<Vec2> p = std::nullopt);

/// Resolved, canonical description of the run (channels inlined) used for hashing.
json canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

SweepResult run_sweep(const RunConfig& cfg, const RunOptions& ropt = {});

/// Runs fn(i) for i in [0, n) on at most `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace larmor::harness
