#include "larmor/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "larmor/errors.hpp"
#include "larmor/quadrature.hpp"
#include "larmor/units.hpp"

namespace larmor::saddle {

namespace {

constexpr double kPi = units::kPi;

// H(t) with H' = A(t) . A(t) (bilinear), analytic in t.
Complex a_squared_integral(const PulseSpec& spec, Complex t) {
  const double a0 = spec.a0();
  const double w = spec.omega();
  if (spec.envelope() == pulse::Envelope::Flat) return a0 * a0 * t;
  // cos^8(u) = (35 + 56 cos 2u + 28 cos 4u + 8 cos 6u + cos 8u) / 128, u = wt/4
  const Complex h = 35.0 * t + 112.0 * std::sin(0.5 * w * t) / w + 28.0 * std::sin(w * t) / w +
                    (16.0 / 3.0) * std::sin(1.5 * w * t) / w + std::sin(2.0 * w * t) / (2.0 * w);
  return a0 * a0 * h / 128.0;
}

// Antiderivative of (p + A)^2 / 2.
Complex action_antiderivative(const PulseSpec& spec, Vec2 p, Complex t) {
  const CVec2 g = pulse::vector_potential_integral(spec, t);
  const double p2 = p.x * p.x + p.y * p.y;
  return 0.5 * (p2 * t + 2.0 * (p.x * g.x + p.y * g.y) + a_squared_integral(spec, t));
}

Complex action_integrand(const PulseSpec& spec, Vec2 p, Complex t) {
  const CVec2 v = CVec2(p) + pulse::vector_potential(spec, t);
  return 0.5 * v.square();
}

quadrature::Options quad_options(const Tolerances& tol, Complex a, Complex b, const PulseSpec& spec) {
  quadrature::Options o;
  o.abs_tol = tol.quad_tol;
  // roughly two panels per laser cycle so each panel sees a smooth integrand
  const double cycles = std::abs(b - a) / spec.period();
  o.initial_panels = std::max(1, static_cast<int>(std::ceil(2.0 * cycles)));
  o.max_panels = std::max(o.max_panels, 4 * o.initial_panels);
  return o;
}

struct NewtonResult {
  Complex t;
  double residual;
  bool ok;
};

NewtonResult newton(const PulseSpec& spec, Vec2 p, double ip, Complex t, const Tolerances& tol) {
  const double scale = p.x * p.x + p.y * p.y + spec.a0() * spec.a0() + 2.0 * ip;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  double res = std::abs(saddle_residual(spec, p, ip, t));
  for (int it = 0; it < tol.max_iter; ++it) {
    if (res < 1e-3 * tol.saddle_tol) break;
    const CVec2 v = CVec2(p) + pulse::vector_potential(spec, t);
    const Complex g = v.square() + 2.0 * ip;
    const Complex dg = -2.0 * dot(v, pulse::electric_field(spec, t));
    if (dg == 0.0) return {t, res, false};
    Complex step = g / dg;
    Complex next = t - step;
    // keep iterates in the upper half-plane
    for (int k = 0; k < 60 && next.imag() <= 0.0; ++k) {
      step *= 0.5;
      next = t - step;
    }
    if (next.imag() <= 0.0) return {t, res, false};
    t = next;
    const double new_res = std::abs(saddle_residual(spec, p, ip, t));
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(t)) && new_res <= floor) {
      res = new_res;
      break;
    }
    res = new_res;
  }
  if (!std::isfinite(res)) return {t, res, false};
  return {t, res, res < tol.saddle_tol || res <= floor};
}

std::vector<Complex> seeds(const PulseSpec& spec, Vec2 p, double ip) {
  const double w = spec.omega();
  const double s = spec.helicity_sign();
  const double pm = p.norm();
  const double phi = s * p.angle();
  std::vector<Complex> out;
  if (spec.envelope() == pulse::Envelope::Flat) {
    const double a0 = spec.a0();
    const double arg = (pm * pm + a0 * a0 + 2.0 * ip) / (2.0 * pm * a0);
    out.emplace_back(phi / w, std::acosh(arg) / w);
    return out;
  }
  for (int k = -1; k <= 1; ++k) {
    const double ph = phi + 2.0 * kPi * k;
    if (std::abs(ph) >= 2.0 * kPi) continue;
    const double c = std::cos(ph / 4.0);
    const double a = spec.a0() * c * c * c * c;
    const double arg = (pm * pm + a * a + 2.0 * ip) / (2.0 * pm * a);
    out.emplace_back(ph / w, std::acosh(std::max(arg, 1.0 + 1e-6)) / w);
  }
  return out;
}

}  // namespace

Complex saddle_residual(const PulseSpec& spec, Vec2 p, double ip, Complex t) {
  const CVec2 v = CVec2(p) + pulse::vector_potential(spec, t);
  return v.square() + 2.0 * ip;
}

Complex volkov_segment(const PulseSpec& spec, Vec2 p, Complex a, Complex b, ActionMethod method,
                       const Tolerances& tol) {
  if (method == ActionMethod::Closed) return action_antiderivative(spec, p, b) - action_antiderivative(spec, p, a);
  return quadrature::integrate_segment_or_throw([&](Complex t) { return action_integrand(spec, p, t); }, a, b,
                                                quad_options(tol, a, b, spec));
}

Complex volkov_phase(const PulseSpec& spec, Vec2 p, Complex ts, double T, ActionMethod method,
                     const Tolerances& tol) {
  const double re = ts.real();
  if (!(T > re)) throw std::invalid_argument("volkov_phase requires T > Re ts");
  Complex s = volkov_segment(spec, p, ts, re, method, tol);
  double end = T;
  if (spec.has_window()) end = std::clamp(T, spec.window_start(), spec.window_end());
  if (end > re) s += volkov_segment(spec, p, re, end, method, tol);
  // free drift once the Cos4 field has switched off
  if (T > end) s += 0.5 * (p.x * p.x + p.y * p.y) * (T - std::max(end, re));
  return s;
}

SaddleSolution solve_saddle(const PulseSpec& spec, Vec2 p, double ip, const Tolerances& tol) {
  if (!(ip > 0.0)) throw std::invalid_argument("solve_saddle requires Ip > 0");
  if (!(p.norm() > 1e-12)) throw std::invalid_argument("solve_saddle: p = 0 has no circular-field saddle");
  const double w = spec.omega();
  std::optional<NewtonResult> best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (Complex seed : seeds(spec, p, ip)) {
    const NewtonResult r = newton(spec, p, ip, seed, tol);
    best_residual = std::min(best_residual, r.residual);
    if (!r.ok || !(r.t.imag() > 0.0)) continue;
    const double phase = w * r.t.real();
    if (phase <= -kPi - 1e-9 || phase > kPi + 1e-9) continue;
    if (spec.has_window() && (r.t.real() < spec.window_start() || r.t.real() > spec.window_end())) continue;
    if (!best || r.t.imag() < best->t.imag()) best = r;
  }
  if (!best) throw ConvergenceError("solve_saddle: no admissible root (best residual " + std::to_string(best_residual) + ")");
  SaddleSolution sol;
  sol.p = p;
  sol.ts = best->t;
  sol.tau_T = best->t.imag();
  sol.residual = best->residual;
  sol.ip = ip;
  sol.r0 = exit_point(spec, sol);
  return sol;
}

double characteristic_momentum(const PulseSpec& spec, double ip, const Tolerances& tol) {
  if (!(ip > 0.0)) throw std::invalid_argument("characteristic_momentum requires Ip > 0");
  const double a0 = spec.a0();
  const double w = spec.omega();
  constexpr double damping = 0.5;
  double p = a0;
  const int max_iter = std::max(tol.max_iter, 500);
  for (int it = 0; it < max_iter; ++it) {
    const SaddleSolution s = solve_saddle(spec, {p, 0.0}, ip, tol);
    const double x = w * s.tau_T;
    const double target = x > 1e-8 ? a0 * std::sinh(x) / x : a0;
    const double next = p + damping * (target - p);
    if (std::abs(next - p) < 1e-10) return next;
    p = next;
  }
  throw ConvergenceError("characteristic_momentum: fixed point did not converge");
}

CVec2 trajectory(const PulseSpec& spec, const SaddleSolution& sol, Complex t) {
  Complex ta = t;
  if (spec.has_window() && t.imag() == 0.0)
    ta = std::clamp(t.real(), spec.window_start(), spec.window_end());
  const CVec2 g = pulse::vector_potential_integral(spec, ta) - pulse::vector_potential_integral(spec, sol.ts);
  return CVec2(sol.p) * (t - sol.ts) + g;
}

CVec2 exit_displacement(const PulseSpec& spec, const SaddleSolution& sol) {
  return trajectory(spec, sol, Complex(sol.ts.real(), 0.0));
}

Vec2 exit_point(const PulseSpec& spec, const SaddleSolution& sol) { return exit_displacement(spec, sol).real(); }

double keldysh_gamma(const PulseSpec& spec, double ip) {
  if (!(ip > 0.0)) throw std::invalid_argument("keldysh_gamma requires Ip > 0");
  return spec.omega() * std::sqrt(2.0 * ip) / spec.field();
}

double ionisation_exponent(const PulseSpec& spec, const SaddleSolution& sol, const Tolerances& tol) {
  const Complex sv = volkov_segment(spec, sol.p, sol.ts, sol.ts.real(), ActionMethod::Closed, tol);
  return sol.ip * sol.tau_T - sv.imag();
}

}  // namespace larmor::saddle
