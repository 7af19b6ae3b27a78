#pragma once

// Attosecond transient-absorption readout: the probe couples both ionic J
// states to a common S state, and the population of that state oscillates
// with the pump-probe delay at the spin-orbit frequency.

#include <iosfwd>
#include <string>
#include <vector>

#include "larmor/vec.hpp"

namespace larmor::pumpprobe {

class ProbeSpec {
 public:
  /// omega1 = E_S - E_{1/2}, omega3 = E_S - E_{3/2}; requires
  /// omega1 - omega3 = -dE (to 1e-12) and bandwidth > 0 (infinity allowed).
  ProbeSpec(double center, double bandwidth, double omega1, double omega3, double dE, double d_half = 1.0,
            double d_threehalf = 1.0);
  /// omega1 derived from omega3 and the splitting.
  static ProbeSpec tuned(double center, double bandwidth, double omega3, double dE, double d_half = 1.0,
                         double d_threehalf = 1.0);

  double center() const { return center_; }
  double bandwidth() const { return bandwidth_; }
  double omega1() const { return omega1_; }
  double omega3() const { return omega3_; }
  double d_half() const { return d_half_; }
  double d_threehalf() const { return d_threehalf_; }
  /// transform-limited Gaussian spectral amplitude exp(-(W - center)^2 / (4 bw^2))
  double spectral_amplitude(double w) const;

 private:
  double center_, bandwidth_, omega1_, omega3_, d_half_, d_threehalf_;
};

struct PumpAmplitudes {
  Complex T1_minus;
  Complex T3_minus;
  Complex T3_minus_spin_up;  // spin-up p- removal, background only
};

struct PathwayAmplitudes {
  Complex A1;
  Complex A3;
  Complex A3_background;
};

/// sqrt(2/27), the product of sqrt(N = 2/3) and |C(1 -1; 1/2 1/2 | 3/2 -1/2)|^2.
double pathway_factor();

PathwayAmplitudes pathway_amplitudes(const PumpAmplitudes& pump, const ProbeSpec& probe);

/// |A1|^2 + |A3|^2 + 2|A1||A3| cos(dE tau - (arg A1 - arg A3)) + |A3bg|^2, tau >= 0.
double population(const PathwayAmplitudes& a, double dE, double tau);
double population(Complex A1, Complex A3, Complex A3_background, double dE, double tau);

struct TraceSample {
  double tau;
  double w;
};

struct PhaseFit {
  double dphi13;    // (-pi, pi]
  double contrast;  // b / a
  double offset;    // a
  double amplitude; // b
};

/// Least-squares fit of w = a + b cos(dE tau - dphi13). Needs >= 3 samples
/// spanning at least one period; throws std::domain_error for a degenerate
/// (unmodulated) trace.
PhaseFit recover_phase(const std::vector<TraceSample>& samples, double dE);

std::vector<TraceSample> synthesize_trace(const PathwayAmplitudes& a, double dE, const std::vector<double>& tau);

/// CSV with header `tau_au,w`.
void write_trace(std::ostream& out, const std::vector<TraceSample>& samples);
std::vector<TraceSample> read_trace(std::istream& in);
std::vector<TraceSample> read_trace_file(const std::string& path);

}  // namespace larmor::pumpprobe
