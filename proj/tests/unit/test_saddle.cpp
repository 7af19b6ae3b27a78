#include <cmath>
#include <stdexcept>

#include "larmor/errors.hpp"
#include "larmor/saddle.hpp"
#include "larmor/units.hpp"
#include "support.hpp"

using namespace larmor;
using pulse::Envelope;
using pulse::Helicity;
using pulse::PulseSpec;

namespace {

template <class F>
double bisect(F f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

// w tau of the Flat saddle for p along +x from cosh(w tau) = (p^2 + A0^2 + 2 Ip) / (2 p A0)
double flat_tau_oracle(const PulseSpec& s, double p, double ip) {
  const double A0 = s.a0();
  const double c = (p * p + A0 * A0 + 2 * ip) / (2 * p * A0);
  return bisect([c](double x) { return std::cosh(x) - c; }, 0.0, 50.0) / s.omega();
}

// x = w tau_T(p0) from 2 A0^2 sinh x cosh x / x - A0^2 sinh^2 x / x^2 - A0^2 - 2 Ip = 0
double p0_oracle(const PulseSpec& s, double ip) {
  const double A = s.a0();
  auto f = [&](double x) {
    const double sh = std::sinh(x), ch = std::cosh(x);
    return 2 * A * A * sh * ch / x - A * A * sh * sh / (x * x) - A * A - 2 * ip;
  };
  const double x = bisect(f, 1e-9, 20.0);
  return A * std::sinh(x) / x;
}

PulseSpec random_pulse(Envelope e) {
  const Helicity h = test::uniform_int(0, 1) ? Helicity::Right : Helicity::Left;
  return PulseSpec(test::uniform(0.03, 0.1), test::uniform(0.02, 0.08), e, h);
}

}  // namespace

TEST_CASE("flat saddle matches the scalar tangential root") {
  for (int trial = 0; trial < 40; ++trial) {
    const PulseSpec s = random_pulse(Envelope::Flat);
    const double ip = test::uniform(0.3, 0.8);
    const double p = test::uniform(0.3, 2.0) * s.a0();
    const auto sol = saddle::solve_saddle(s, {p, 0.0}, ip);
    CHECK(std::abs(sol.ts.real()) < 1e-10 / s.omega());
    CHECK(std::abs(sol.tau_T - flat_tau_oracle(s, p, ip)) < 1e-9 * sol.tau_T);
    CHECK(sol.residual < 1e-12);
  }
}

TEST_CASE("property: residual bound and admissible branch for both envelopes") {
  for (Envelope e : {Envelope::Flat, Envelope::Cos4})
    for (int trial = 0; trial < 40; ++trial) {
      const PulseSpec s = random_pulse(e);
      const double ip = test::uniform(0.3, 0.8);
      const Vec2 p = Vec2::polar(test::uniform(0.6, 1.4) * s.a0(), test::uniform(-0.6, 0.6));
      const auto sol = saddle::solve_saddle(s, p, ip);
      CHECK(std::abs(saddle::saddle_residual(s, p, ip, sol.ts)) < 1e-12 * (1.0 + 2 * ip + s.a0() * s.a0()));
      CHECK(sol.tau_T > 0.0);
      const double phase = s.omega() * sol.ts.real();
      CHECK(phase > -units::kPi);
      CHECK(phase <= units::kPi);
    }
}

TEST_CASE("helicity mirror") {
  const PulseSpec r(0.06, 0.05, Envelope::Cos4, Helicity::Right);
  const PulseSpec l = r.with_helicity(Helicity::Left);
  const auto a = saddle::solve_saddle(r, {1.0, 0.3}, 0.5);
  const auto b = saddle::solve_saddle(l, {1.0, -0.3}, 0.5);
  CHECK(test::close(a.ts, b.ts, 1e-10));
  CHECK(std::abs(a.r0.x - b.r0.x) < 1e-9);
  CHECK(std::abs(a.r0.y + b.r0.y) < 1e-9);
}

TEST_CASE("property: saddle time moves with Ip as 1 / (v . F)") {
  for (Envelope e : {Envelope::Flat, Envelope::Cos4})
    for (int trial = 0; trial < 20; ++trial) {
      const PulseSpec s = random_pulse(e);
      const double ip = test::uniform(0.3, 0.8);
      const Vec2 p = Vec2::polar(test::uniform(0.8, 1.2) * s.a0(), test::uniform(-0.3, 0.3));
      const double d = 1e-4;
      const auto a = saddle::solve_saddle(s, p, ip);
      const auto b = saddle::solve_saddle(s, p, ip + d);
      const CVec2 v = CVec2(p) + pulse::vector_potential(s, a.ts);
      const Complex slope = 1.0 / dot(v, pulse::electric_field(s, a.ts));
      CHECK(std::abs((b.ts - a.ts) / d - slope) < 0.01 * std::abs(slope));
    }
}

TEST_CASE("characteristic momentum") {
  for (int trial = 0; trial < 20; ++trial) {
    const PulseSpec s = random_pulse(Envelope::Flat);
    const double ip = test::uniform(0.3, 0.8);
    const double p0 = saddle::characteristic_momentum(s, ip);
    CHECK(std::abs(p0 - p0_oracle(s, ip)) < 1e-8);
    CHECK(p0 >= s.a0());
  }
  // close to A0 in the tunnelling limit
  const PulseSpec slow(0.05, 0.002);
  const double gamma = saddle::keldysh_gamma(slow, 0.5);
  CHECK(gamma < 0.3);
  CHECK(std::abs(saddle::characteristic_momentum(slow, 0.5) / slow.a0() - 1.0) < gamma * gamma / 6.0 + 1e-3);
}

TEST_CASE("exit point") {
  SUBCASE("tunnelling limit |r0| -> Ip / F") {
    const PulseSpec s(0.05, 0.0016);
    const double ip = 0.5;
    const auto sol = saddle::solve_saddle(s, {saddle::characteristic_momentum(s, ip), 0.0}, ip);
    CHECK(std::abs(sol.r0.norm() / (ip / s.field()) - 1.0) < 0.02);
  }
  SUBCASE("exit point is real and perpendicular at p0") {
    const PulseSpec s(0.0844, 0.057);
    const double ip = 0.5267;
    const auto sol = saddle::solve_saddle(s, {saddle::characteristic_momentum(s, ip), 0.0}, ip);
    const CVec2 disp = saddle::exit_displacement(s, sol);
    CHECK(std::abs(disp.y.imag()) < 1e-8 * sol.r0.norm());
    CHECK(std::abs(disp.x.imag()) < 1e-8 * sol.r0.norm());
    CHECK(std::abs(sol.r0.x) < 1e-8 * sol.r0.norm());
  }
  SUBCASE("|r0| decreases with field") {
    double last = INFINITY;
    for (double F : {0.04, 0.05, 0.06, 0.07, 0.08}) {
      const PulseSpec s(F, 0.03);
      const auto sol = saddle::solve_saddle(s, {saddle::characteristic_momentum(s, 0.5), 0.0}, 0.5);
      CHECK(sol.r0.norm() < last);
      last = sol.r0.norm();
    }
  }
}

TEST_CASE("tunnelling time grows with Ip") {
  const PulseSpec s(0.06, 0.05);
  double last = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double ip = 0.3 + 0.05 * k;
    const auto sol = saddle::solve_saddle(s, {saddle::characteristic_momentum(s, ip), 0.0}, ip);
    CHECK(sol.tau_T > last);
    last = sol.tau_T;
  }
}

TEST_CASE("Volkov phase") {
  SUBCASE("vanishing field") {
    const PulseSpec s(1e-200, 0.05);
    const Vec2 p{0.7, -0.2};
    const Complex ts(3.0, 20.0);
    const double T = 400.0;
    const Complex expect = 0.5 * (0.49 + 0.04) * (T - ts);
    CHECK(test::close(saddle::volkov_phase(s, p, ts, T), expect, 1e-12 * std::abs(expect)));
  }
  SUBCASE("property: closed form agrees with quadrature") {
    for (Envelope e : {Envelope::Flat, Envelope::Cos4})
      for (int trial = 0; trial < 15; ++trial) {
        const PulseSpec s = random_pulse(e);
        const double ip = test::uniform(0.3, 0.8);
        const Vec2 p = Vec2::polar(test::uniform(0.8, 1.2) * s.a0(), test::uniform(-0.5, 0.5));
        const auto sol = saddle::solve_saddle(s, p, ip);
        const double T = sol.ts.real() + test::uniform(0.5, 3.0) * s.period();
        const Complex a = saddle::volkov_phase(s, p, sol.ts, T, saddle::ActionMethod::Closed);
        const Complex b = saddle::volkov_phase(s, p, sol.ts, T, saddle::ActionMethod::Quadrature);
        CHECK(test::close(a, b, 1e-10 * (1.0 + std::abs(a))));
      }
  }
  SUBCASE("property: contour independence for the entire integrand") {
    for (int trial = 0; trial < 15; ++trial) {
      const PulseSpec s = random_pulse(Envelope::Flat);
      const Vec2 p = Vec2::polar(test::uniform(0.8, 1.2) * s.a0(), test::uniform(-0.5, 0.5));
      const auto sol = saddle::solve_saddle(s, p, 0.5);
      const double T = sol.ts.real() + test::uniform(0.5, 2.0) * s.period();
      const Complex direct = saddle::volkov_segment(s, p, sol.ts, T, saddle::ActionMethod::Quadrature);
      CHECK(test::close(saddle::volkov_phase(s, p, sol.ts, T), direct, 1e-9 * (1.0 + std::abs(direct))));
    }
  }
  SUBCASE("requires T beyond the saddle") {
    const PulseSpec s(0.05, 0.05);
    CHECK_THROWS_AS(saddle::volkov_phase(s, {1.0, 0.0}, Complex(10.0, 5.0), 5.0), std::invalid_argument);
  }
}

TEST_CASE("ionisation exponent") {
  const PulseSpec s(0.05, 0.0016);
  const double ip = 0.5;
  const auto sol = saddle::solve_saddle(s, {saddle::characteristic_momentum(s, ip), 0.0}, ip);
  const double kappa = std::sqrt(2 * ip);
  CHECK(saddle::ionisation_exponent(s, sol) > 0.0);
  CHECK(std::abs(saddle::ionisation_exponent(s, sol) / (kappa * kappa * kappa / (3 * s.field())) - 1.0) < 0.01);
  // off the ridge ionisation is suppressed
  const auto off = saddle::solve_saddle(s, {0.8 * sol.p.x, 0.0}, ip);
  CHECK(saddle::ionisation_exponent(s, off) > saddle::ionisation_exponent(s, sol));
}

TEST_CASE("invalid input") {
  const PulseSpec s(0.05, 0.05);
  CHECK_THROWS_AS(saddle::solve_saddle(s, {1.0, 0.0}, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(saddle::solve_saddle(s, {0.0, 0.0}, 0.5), std::invalid_argument);
  CHECK(saddle::keldysh_gamma(s, 0.5) == doctest::Approx(1.0));
}
