#include "larmor/pumpprobe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "larmor/units.hpp"

namespace larmor::pumpprobe {

ProbeSpec::ProbeSpec(double center, double bandwidth, double omega1, double omega3, double dE, double d_half,
                     double d_threehalf)
    : center_(center), bandwidth_(bandwidth), omega1_(omega1), omega3_(omega3), d_half_(d_half),
      d_threehalf_(d_threehalf) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("probe bandwidth must be positive");
  if (!(dE > 0.0)) throw std::invalid_argument("spin-orbit splitting must be positive");
  if (std::abs(omega1 - omega3 + dE) > 1e-12)
    throw std::invalid_argument("probe transitions inconsistent with the splitting (need omega1 - omega3 = -dE)");
}

ProbeSpec ProbeSpec::tuned(double center, double bandwidth, double omega3, double dE, double d_half,
                           double d_threehalf) {
  return {center, bandwidth, omega3 - dE, omega3, dE, d_half, d_threehalf};
}

double ProbeSpec::spectral_amplitude(double w) const {
  const double d = w - center_;
  return std::exp(-d * d / (4.0 * bandwidth_ * bandwidth_));
}

double pathway_factor() { return std::sqrt(2.0 / 27.0); }

PathwayAmplitudes pathway_amplitudes(const PumpAmplitudes& pump, const ProbeSpec& probe) {
  const double k = pathway_factor();
  const double f1 = probe.spectral_amplitude(probe.omega1());
  const double f3 = probe.spectral_amplitude(probe.omega3());
  return {2.0 * k * pump.T1_minus * probe.d_half() * f1, k * pump.T3_minus * probe.d_threehalf() * f3,
          k * pump.T3_minus_spin_up * probe.d_threehalf() * f3};
}

double population(Complex A1, Complex A3, Complex A3_background, double dE, double tau) {
  if (!(tau >= 0.0)) throw std::domain_error("pump-probe delay must be non-negative");
  const double a1 = std::abs(A1);
  const double a3 = std::abs(A3);
  const double dphi = std::arg(A1) - std::arg(A3);
  // the spin-up arm has no partner in the other channel: it only adds |A3bg|^2
  return a1 * a1 + a3 * a3 + 2.0 * a1 * a3 * std::cos(dE * tau - dphi) + std::norm(A3_background);
}

double population(const PathwayAmplitudes& a, double dE, double tau) {
  return population(a.A1, a.A3, a.A3_background, dE, tau);
}

PhaseFit recover_phase(const std::vector<TraceSample>& samples, double dE) {
  if (!(dE > 0.0)) throw std::invalid_argument("recover_phase requires a positive splitting");
  if (samples.size() < 3) throw std::invalid_argument("recover_phase needs at least 3 samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                            [](const TraceSample& a, const TraceSample& b) { return a.tau < b.tau; });
  const double period = 2.0 * units::kPi / dE;
  if (hi->tau - lo->tau < period * (1.0 - 1e-9))
    throw std::invalid_argument("recover_phase needs samples spanning one modulation period");

  // normal equations for w = a + c cos(x) + s sin(x), accumulated in sample order
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (const auto& smp : samples) {
    const double x = dE * smp.tau;
    const Eigen::Vector3d row(1.0, std::cos(x), std::sin(x));
    M += row * row.transpose();
    rhs += row * smp.w;
  }
  const Eigen::Vector3d sol = M.ldlt().solve(rhs);
  const double a = sol(0);
  const double b = std::hypot(sol(1), sol(2));
  const double contrast = a != 0.0 ? b / std::abs(a) : 0.0;
  if (!(contrast >= 1e-12)) throw std::domain_error("trace has no modulation; phase undefined");
  double phase = std::atan2(sol(2), sol(1));
  if (phase <= -units::kPi) phase += 2.0 * units::kPi;
  return {phase, contrast, a, b};
}

std::vector<TraceSample> synthesize_trace(const PathwayAmplitudes& a, double dE, const std::vector<double>& tau) {
  std::vector<TraceSample> out;
  out.reserve(tau.size());
  for (double t : tau) out.push_back({t, population(a, dE, t)});
  return out;
}

void write_trace(std::ostream& out, const std::vector<TraceSample>& samples) {
  out << "tau_au,w\n";
  char buf[64];
  for (const auto& s : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.tau, s.w);
    out << buf;
  }
}

std::vector<TraceSample> read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "tau_au,w") throw std::runtime_error("trace header must be `tau_au,w`");
  std::vector<TraceSample> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    TraceSample s{};
    char comma = 0;
    if (!(ls >> s.tau >> comma >> s.w) || comma != ',')
      throw std::runtime_error("trace line " + std::to_string(lineno) + ": expected `tau,w`");
    out.push_back(s);
  }
  return out;
}

std::vector<TraceSample> read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace " + path);
  return read_trace(in);
}

}  // namespace larmor::pumpprobe
