#include "larmor/armphase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "larmor/errors.hpp"
#include "larmor/quadrature.hpp"
#include "larmor/units.hpp"

namespace larmor::armphase {

namespace {

constexpr double kPi = units::kPi;

class BranchTracker {
 public:
  BranchTracker(double r_min) : r_min_(r_min) {}

  // principal sqrt of r^2, after checking it continues the branch followed so far
  void visit(Complex r2, Complex t) {
    Complex r = std::sqrt(r2);
    if (have_last_ && std::abs(r - last_) > std::abs(-r - last_)) r = -r;
    if (std::abs(r) < r_min_) fail("trajectory passes within r_min of the origin", t, r);
    if (r.real() < 0.0) fail("trajectory radius crosses the principal-branch cut", t, r);
    last_ = r;
    have_last_ = true;
  }

 private:
  [[noreturn]] static void fail(const char* what, Complex t, Complex r) {
    std::ostringstream os;
    os << what << " at t = " << t << " (r = " << r << ")";
    throw BranchCutError(os.str());
  }
  double r_min_;
  Complex last_{};
  bool have_last_ = false;
};

struct Contour {
  const PulseSpec& spec;
  const saddle::SaddleSolution& sol;
  const Potential& U;
  const PhaseOptions& opt;

  Complex integrand(Complex t) const {
    const CVec2 x = saddle::trajectory(spec, sol, t);
    const Complex r = std::sqrt(x.square());
    if (std::abs(r) < opt.r_min) throw BranchCutError("trajectory passes within r_min of the origin");
    return U(x, r);
  }

  void scan(BranchTracker& tracker, Complex a, Complex b, int n) const {
    for (int i = 0; i <= n; ++i) {
      const Complex t = a + (b - a) * (double(i) / n);
      tracker.visit(saddle::trajectory(spec, sol, t).square(), t);
    }
  }

  Complex integrate(Complex a, Complex b) const {
    quadrature::Options q;
    q.abs_tol = opt.tol.quad_tol;
    const double cycles = std::abs(b - a) / spec.period();
    q.initial_panels = std::max(1, static_cast<int>(std::ceil(2.0 * cycles)));
    q.max_panels = std::max(q.max_panels, 8 * q.initial_panels);
    return quadrature::integrate_segment_or_throw([this](Complex t) { return integrand(t); }, a, b, q);
  }

  // real-axis piece, split where the Cos4 field switches off
  Complex integrate_real(BranchTracker& tracker, double a, double b) const {
    if (!(b > a)) return 0.0;
    const int n = std::max(16, static_cast<int>(std::ceil(opt.samples_per_cycle * (b - a) / spec.period())));
    scan(tracker, a, b, n);
    if (spec.has_window() && a < spec.window_end() && b > spec.window_end())
      return integrate(a, spec.window_end()) + integrate(spec.window_end(), b);
    return integrate(a, b);
  }
};

}  // namespace

Potential coulomb(double charge) {
  return [charge](const CVec2&, Complex r) { return charge / r; };
}

Potential short_range_difference(const ChannelPair& pair) {
  // in-plane (theta = pi/2) multipole tails beyond the monopole; only L' = 1
  // carries a strength in the channel description
  const double p2 = angular::legendre_p(2, 0.0);
  const double c = p2 * (atomic::multipole_coefficient(pair.lower(), 1) * pair.lower().quadrupole -
                         atomic::multipole_coefficient(pair.upper(), 1) * pair.upper().quadrupole);
  return [c](const CVec2&, Complex r) { return c / (r * r * r); };
}

// --- accumulator ------------------------------------------------------------

PhaseAccumulator::PhaseAccumulator(const PulseSpec& spec, double ip, Vec2 p, Potential U, const PhaseOptions& opt)
    : spec_(spec), U_(std::move(U)), opt_(opt) {
  phase_.saddle = saddle::solve_saddle(spec_, p, ip, opt_.tol);
  const auto& sol = phase_.saddle;
  const double kappa = std::sqrt(2.0 * ip);
  const Complex start = sol.ts - Complex(0.0, 1.0 / (kappa * kappa));
  const Complex exit(sol.ts.real(), 0.0);
  BranchTracker tracker(opt_.r_min);
  const Contour c{spec_, sol, U_, opt_};
  c.scan(tracker, start, exit, 128);
  phase_.vertical = c.integrate(start, exit);
  phase_.total = phase_.vertical;
  phase_.T = sol.ts.real();
}

void PhaseAccumulator::extend_to(double T_new) {
  if (T_new < phase_.T) throw std::invalid_argument("PhaseAccumulator: T must not decrease");
  if (T_new == phase_.T) return;
  // branch continuity across pieces: the real axis starts on the principal
  // branch at the exit point, which the vertical scan already validated
  BranchTracker tracker(opt_.r_min);
  const Contour c{spec_, phase_.saddle, U_, opt_};
  const Complex piece = c.integrate_real(tracker, phase_.T, T_new);
  phase_.horizontal += piece;
  phase_.total += piece;
  phase_.T = T_new;
}

ChannelPhase channel_phase(const PulseSpec& spec, double ip, Vec2 p, const Potential& U, double T,
                           const PhaseOptions& opt) {
  PhaseAccumulator acc(spec, ip, p, U, opt);
  if (!(T > acc.saddle().ts.real())) throw std::invalid_argument("channel_phase requires T > Re ts");
  acc.extend_to(T);
  return acc.phase();
}

ChannelPhase channel_phase(const PulseSpec& spec, const ChannelSpec& ch, Vec2 p, const Potential& U, double T,
                           const PhaseOptions& opt) {
  return channel_phase(spec, ch.ip, p, U, T, opt);
}

// --- channel differences ----------------------------------------------------

namespace {

struct Derivative {
  double value;
  double under_barrier;
};

Derivative central_difference(const std::vector<PhaseAccumulator>& acc, double h, double tol) {
  // acc[2..5] = mean + h, mean - h, mean + h/2, mean - h/2
  auto d = [&](int plus, int minus, double step, bool vertical) {
    const auto& a = acc[plus].phase();
    const auto& b = acc[minus].phase();
    const double fa = vertical ? a.vertical.real() : a.total.real();
    const double fb = vertical ? b.vertical.real() : b.total.real();
    return (fa - fb) / (2.0 * step);
  };
  Derivative out{};
  for (bool vertical : {false, true}) {
    const double dh = d(2, 3, h, vertical);
    const double dh2 = d(4, 5, 0.5 * h, vertical);
    const double v = std::abs(dh - dh2) > tol ? (4.0 * dh2 - dh) / 3.0 : dh;
    (vertical ? out.under_barrier : out.value) = v;
  }
  return out;
}

}  // namespace

PhaseBreakdown compute_phases(const PulseSpec& spec, const ChannelPair& pair, Vec2 p, const PhaseOptions& opt) {
  const double mean = pair.mean_ip();
  const double h = pair.splitting() / 4.0;
  const Potential Uc = coulomb(pair.lower().charge);

  std::vector<PhaseAccumulator> acc;
  acc.reserve(7);
  for (double ip : {pair.lower().ip, pair.upper().ip, mean + h, mean - h, mean + 0.5 * h, mean - 0.5 * h})
    acc.emplace_back(spec, ip, p, Uc, opt);
  acc.emplace_back(spec, mean, p, short_range_difference(pair), opt);

  double base = -std::numeric_limits<double>::infinity();
  for (const auto& a : acc) base = std::max(base, a.saddle().ts.real());
  const double span = opt.T_cycles * spec.period();

  auto differences = [&] {
    return std::pair{acc[1].phase().total.real() - acc[0].phase().total.real(), acc[6].phase().total.real()};
  };

  for (auto& a : acc) a.extend_to(base + span);
  auto [dc, dd] = differences();
  bool converged = false;
  for (int k = 1; k <= opt.T_max_doublings; ++k) {
    const double T = base + span * std::ldexp(1.0, k);
    for (auto& a : acc) a.extend_to(T);
    const auto [dc2, dd2] = differences();
    const bool ok = std::abs(dc2 - dc) < opt.T_tol && std::abs(dd2 - dd) < opt.T_tol;
    dc = dc2;
    dd = dd2;
    if (ok) {
      converged = true;
      break;
    }
  }

  const Derivative der = central_difference(acc, h, opt.richardson_tol);
  PhaseBreakdown out;
  out.phi_c = dc;
  out.phi_d = dd;
  out.xi_so = xi_so(spec.field(), pair.lower().ip, pair.lower().L.twice / 2);
  out.under_barrier_c = acc[1].phase().vertical.real() - acc[0].phase().vertical.real();
  out.dphi_c_dip = der.value;
  out.under_barrier_dphi_c_dip = der.under_barrier;
  out.T_obs = acc[0].phase().T;
  out.converged = converged;
  return out;
}

CoulombDifference delta_phi_c(const PulseSpec& spec, const ChannelPair& pair, Vec2 p, const PhaseOptions& opt) {
  const PhaseBreakdown b = compute_phases(spec, pair, p, opt);
  return {b.phi_c, b.dphi_c_dip, b.under_barrier_c, b.under_barrier_dphi_c_dip, b.T_obs, b.converged};
}

double delta_phi_d(const PulseSpec& spec, const ChannelPair& pair, Vec2 p, const PhaseOptions& opt) {
  PhaseAccumulator acc(spec, pair.mean_ip(), p, short_range_difference(pair), opt);
  const double base = acc.saddle().ts.real();
  const double span = opt.T_cycles * spec.period();
  acc.extend_to(base + span);
  double d = acc.phase().total.real();
  for (int k = 1; k <= opt.T_max_doublings; ++k) {
    acc.extend_to(base + span * std::ldexp(1.0, k));
    const double d2 = acc.phase().total.real();
    const bool ok = std::abs(d2 - d) < opt.T_tol;
    d = d2;
    if (ok) break;
  }
  return d;
}

// --- closed forms -----------------------------------------------------------

double xi_so(double F, double ip, int l) {
  if (!(F >= 0.0) || !(ip > 0.0) || l < 0) throw std::domain_error("xi_so requires F >= 0, Ip > 0, l >= 0");
  const double c2 = units::kSpeedOfLight * units::kSpeedOfLight;
  return -0.42 * (l + 0.5) / c2 * F * F / std::pow(ip, 2.5);
}

double xi_so_numeric(double F, double ip, int l) {
  if (!(F > 0.0) || !(ip > 0.0) || l < 0) throw std::domain_error("xi_so_numeric requires F, Ip > 0, l >= 0");
  const double c2 = units::kSpeedOfLight * units::kSpeedOfLight;
  const double r0 = ip / F;
  const double scale = std::sqrt(2.0 * r0 / F);
  auto dV = [&](double r) { return -(l + 0.5) / (2.0 * c2 * r * r * r); };
  // t = scale * tan(u) maps [0, inf) onto [0, pi/2)
  auto f = [&](double u) {
    const double sec2 = 1.0 / (std::cos(u) * std::cos(u));
    return dV(r0 * sec2) * scale * sec2;
  };
  quadrature::Options q;
  q.abs_tol = 1e-20;
  const auto res = quadrature::integrate_real(f, 0.0, 0.5 * kPi, q);
  return res.value.real();
}

std::pair<double, double> tunnelling_limit_phases(double F, double ip, double dE) {
  if (!(F >= 0.0) || !(ip > 0.0) || !(dE >= 0.0)) throw std::domain_error("tunnelling_limit_phases: invalid inputs");
  return {-dE / std::pow(ip, 1.5), -0.4 * F * F / std::pow(ip, 2.5)};
}

}  // namespace larmor::armphase
