#include "larmor/harness/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "larmor/clock.hpp"
#include "larmor/errors.hpp"
#include "larmor/saddle.hpp"

namespace larmor::harness {

double arm_weight(const pulse::PulseSpec& spec, const atomic::ChannelSpec& ch, Vec2 p, bool volume_element,
                  const saddle::Tolerances& tol) {
  const saddle::SaddleSolution sol = saddle::solve_saddle(spec, p, ch.ip, tol);
  const double w = std::exp(-2.0 * saddle::ionisation_exponent(spec, sol, tol));
  return volume_element ? w * p.norm() : w;
}

double radial_ionisation_delay(const pulse::PulseSpec& spec, const atomic::ChannelPair& pair, double p_r,
                               const armphase::PhaseOptions& opt) {
  const auto flat = spec.with_envelope(pulse::Envelope::Flat);
  const auto b = armphase::compute_phases(flat, pair, {p_r, 0.0}, opt);
  return clock::extract_times(b.phi_c, b.phi_d, pair.splitting()).tau_si;
}

SpectrumMap spectrum_map(const pulse::PulseSpec& spec, const atomic::ChannelPair& pair, const MomentumGridSpec& grid,
                         const SpectrumOptions& opt) {
  SpectrumMap m;
  m.p_r = grid.p_r.values();
  m.p_phi = grid.p_phi.values();
  m.includes_volume_element = opt.volume_element;
  m.core_potential = opt.core_potential;
  m.weight_envelope = pulse::Envelope::Cos4;
  const auto weight_pulse = spec.with_envelope(pulse::Envelope::Cos4);
  const double s = spec.helicity_sign();

  for (double pr : m.p_r)
    if (!(pr > 0.0)) throw std::invalid_argument("spectrum grid needs p_r > 0");

  // Slow electrons far below the ridge can have trajectories through the
  // core; their delay is taken from the nearest radius where it exists.
  std::vector<double> shifts(m.p_r.size(), 0.0);
  if (opt.core_potential) {
    std::vector<std::optional<double>> tau(m.p_r.size());
    std::string last_error;
    for (std::size_t i = 0; i < m.p_r.size(); ++i) {
      try {
        tau[i] = radial_ionisation_delay(spec, pair, m.p_r[i], opt.phase);
      } catch (const std::exception& e) {
        last_error = e.what();
      }
    }
    for (std::size_t i = 0; i < m.p_r.size(); ++i) {
      std::optional<double> t = tau[i];
      for (std::size_t d = 1; !t && d < m.p_r.size(); ++d) {
        if (i + d < m.p_r.size() && tau[i + d]) t = tau[i + d];
        else if (i >= d && tau[i - d]) t = tau[i - d];
      }
      if (!t) throw BranchCutError("no radial momentum with a usable delay: " + last_error);
      shifts[i] = s * spec.omega() * *t;
    }
  }

  m.weight.resize(m.p_r.size() * m.p_phi.size());
  for (std::size_t i = 0; i < m.p_r.size(); ++i) {
    const double pr = m.p_r[i];
    const double shift = shifts[i];
    for (std::size_t j = 0; j < m.p_phi.size(); ++j) {
      const Vec2 p = Vec2::polar(pr, m.p_phi[j] - shift);
      m.weight[i * m.p_phi.size() + j] = arm_weight(weight_pulse, pair.lower(), p, opt.volume_element, opt.phase.tol);
    }
  }
  const double mx = *std::max_element(m.weight.begin(), m.weight.end());
  if (!(mx > 0.0) || !std::isfinite(mx)) throw std::domain_error("spectrum map has no finite positive weight");
  for (double& w : m.weight) w /= mx;
  return m;
}

namespace {

// vertex offset (in grid steps) of the parabola through (-1, a), (0, b), (1, c)
double vertex(double a, double b, double c) {
  const double den = a - 2.0 * b + c;
  if (den >= 0.0) return 0.0;
  return std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
}

}  // namespace

Peak spectrum_peak(const SpectrumMap& map) {
  if (map.weight.empty()) throw std::domain_error("empty spectrum map");
  const auto [lo, hi] = std::minmax_element(map.weight.begin(), map.weight.end());
  if (*hi - *lo <= 1e-12 * std::abs(*hi)) throw std::domain_error("flat spectrum map has no peak");
  const std::size_t k = static_cast<std::size_t>(hi - map.weight.begin());
  const std::size_t nphi = map.p_phi.size();
  const std::size_t i = k / nphi;
  const std::size_t j = k % nphi;
  Peak p{map.p_r[i], map.p_phi[j], *hi};
  if (j > 0 && j + 1 < nphi)
    p.p_phi += vertex(map.at(i, j - 1), map.at(i, j), map.at(i, j + 1)) * (map.p_phi[j + 1] - map.p_phi[j]);
  if (i > 0 && i + 1 < map.p_r.size())
    p.p_r += vertex(map.at(i - 1, j), map.at(i, j), map.at(i + 1, j)) * (map.p_r[i + 1] - map.p_r[i]);
  return p;
}

double offset_angle(const SpectrumMap& map, const SpectrumMap& reference) {
  return spectrum_peak(map).p_phi - spectrum_peak(reference).p_phi;
}

double offset_angle(const pulse::PulseSpec& spec, const atomic::ChannelPair& pair, const MomentumGridSpec& grid,
                    const SpectrumOptions& opt) {
  SpectrumOptions ref = opt;
  ref.core_potential = false;
  return offset_angle(spectrum_map(spec, pair, grid, opt), spectrum_map(spec, pair, grid, ref));
}

}  // namespace larmor::harness
