#pragma once

// Complex-time saddle points of the strong-field ionisation amplitude in a
// circularly polarised field, the Volkov action and the electron trajectory
// launched from the saddle.

#include "larmor/pulse.hpp"
#include "larmor/vec.hpp"

namespace larmor::saddle {

using pulse::PulseSpec;

struct Tolerances {
  double saddle_tol = 1e-12;  // |(p + A)^2 + 2 Ip| at the returned root
  double quad_tol = 1e-12;
  int max_iter = 200;
};

struct SaddleSolution {
  Vec2 p;
  Complex ts;
  double tau_T = 0.0;  // Im ts
  Vec2 r0;             // real exit coordinate
  double residual = 0.0;
  double ip = 0.0;
};

enum class ActionMethod { Closed, Quadrature };

/// S_V = 1/2 int_{ts}^{T} (p + A)^2 dt along ts -> Re ts -> T. On the real
/// axis the Cos4 field vanishes outside its window. Requires T > Re ts.
Complex volkov_phase(const PulseSpec& spec, Vec2 p, Complex ts, double T,
                     ActionMethod method = ActionMethod::Closed, const Tolerances& tol = {});

/// 1/2 int (p + A)^2 dt along the straight segment a -> b using the analytic
/// continuation of A (no window clamping).
Complex volkov_segment(const PulseSpec& spec, Vec2 p, Complex a, Complex b,
                       ActionMethod method = ActionMethod::Closed, const Tolerances& tol = {});

/// (p + A(t))^2 + 2 Ip
Complex saddle_residual(const PulseSpec& spec, Vec2 p, double ip, Complex t);

/// Root of (p + A(ts))^2 = -2 Ip with Im ts > 0 and w Re ts in (-pi, pi];
/// the smallest Im ts among the converged roots is returned.
/// Throws ConvergenceError if no admissible root is found.
SaddleSolution solve_saddle(const PulseSpec& spec, Vec2 p, double ip, const Tolerances& tol = {});

/// Self-consistent p0 = A0 sinh(w tau_T(p0)) / (w tau_T(p0)), p along +x.
double characteristic_momentum(const PulseSpec& spec, double ip, const Tolerances& tol = {});

/// Displacement int_{ts}^{t} v dz, v = p + A, for complex t on the vertical
/// segment or real t (real t honours the Cos4 window).
CVec2 trajectory(const PulseSpec& spec, const SaddleSolution& sol, Complex t);

/// int_{ts}^{Re ts} v dz (complex) and its real part.
CVec2 exit_displacement(const PulseSpec& spec, const SaddleSolution& sol);
Vec2 exit_point(const PulseSpec& spec, const SaddleSolution& sol);

/// gamma = w sqrt(2 Ip) / F
double keldysh_gamma(const PulseSpec& spec, double ip);

/// Im of the ionisation exponent, Ip Im ts - Im S_V(T, p, ts) (> 0); only
/// the vertical segment contributes.
double ionisation_exponent(const PulseSpec& spec, const SaddleSolution& sol, const Tolerances& tol = {});

}  // namespace larmor::saddle
