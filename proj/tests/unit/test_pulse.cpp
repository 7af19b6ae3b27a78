#include <cmath>
#include <stdexcept>

#include "larmor/pulse.hpp"
#include "larmor/units.hpp"
#include "support.hpp"

using namespace larmor;
using pulse::Envelope;
using pulse::Helicity;
using pulse::PulseSpec;

namespace {

Complex rand_t(double omega) {
  const double T = 2.0 * units::kPi / omega;
  return {test::uniform(-0.9 * T, 0.9 * T), test::uniform(-0.3 * T, 0.3 * T)};
}

}  // namespace

TEST_CASE("flat circular field") {
  const PulseSpec s(0.05, 0.057, Envelope::Flat, Helicity::Right);
  CHECK(s.a0() == doctest::Approx(0.05 / 0.057));
  const CVec2 A = s.a0() * CVec2{Vec2{-1.0, 0.0}};
  CHECK(test::close(pulse::vector_potential(s, 0.0).x, A.x, 1e-15));
  // A(i tau) = -A0 (cosh, i s sinh)
  const double tau = 17.0;
  const CVec2 Ai = pulse::vector_potential(s, Complex(0.0, tau));
  CHECK(test::close(Ai.x, -s.a0() * std::cosh(s.omega() * tau), 1e-12));
  CHECK(test::close(Ai.y, Complex(0.0, -s.a0() * std::sinh(s.omega() * tau)), 1e-12));
  // |F| constant on the real axis
  for (double t : {0.0, 10.0, 33.3}) CHECK(std::abs(pulse::electric_field(s, t).real().norm() - 0.05) < 1e-14);
  CHECK_FALSE(s.has_window());
}

TEST_CASE("property: F = -dA/dt and G' = A at complex time") {
  for (Envelope e : {Envelope::Flat, Envelope::Cos4})
    for (Helicity hel : {Helicity::Right, Helicity::Left}) {
      const PulseSpec s(test::uniform(0.02, 0.1), test::uniform(0.02, 0.1), e, hel);
      for (int trial = 0; trial < 40; ++trial) {
        const Complex t = rand_t(s.omega());
        const double h = 1e-4 / s.omega();
        const CVec2 dA = Complex(1.0 / (2 * h)) * (pulse::vector_potential(s, t + h) - pulse::vector_potential(s, t - h));
        const CVec2 F = pulse::electric_field(s, t);
        const double scale = std::abs(pulse::vector_potential(s, t).x) * s.omega() + s.field();
        CHECK(test::close(F.x, -dA.x, 1e-6 * scale));
        CHECK(test::close(F.y, -dA.y, 1e-6 * scale));
        const CVec2 dG =
            Complex(1.0 / (2 * h)) * (pulse::vector_potential_integral(s, t + h) - pulse::vector_potential_integral(s, t - h));
        const CVec2 A = pulse::vector_potential(s, t);
        CHECK(test::close(dG.x, A.x, 1e-6 * (std::abs(A.x) + s.a0())));
        CHECK(test::close(dG.y, A.y, 1e-6 * (std::abs(A.y) + s.a0())));
      }
    }
}

TEST_CASE("cos4 envelope and its window") {
  const PulseSpec s(0.05, 0.0465, Envelope::Cos4);
  CHECK(s.has_window());
  CHECK(s.window_end() == doctest::Approx(2.0 * units::kPi / 0.0465));
  CHECK(s.window_start() == doctest::Approx(-s.window_end()));
  for (int trial = 0; trial < 50; ++trial) {
    const Complex t = rand_t(s.omega());
    const Complex c = std::cos(s.omega() * t / 4.0);
    CHECK(test::close(pulse::envelope_value(s, t), c * c * c * c, 1e-13));
  }
  const double outside = 1.01 * s.window_end();
  CHECK(pulse::vector_potential_real(s, outside).norm() == 0.0);
  CHECK(pulse::vector_potential_real(s, -outside).norm() == 0.0);
  // the vector potential integrates to zero over the whole pulse along x
  const Vec2 total = pulse::vector_potential_integral_real(s, -2 * outside, 2 * outside);
  const Vec2 window = pulse::vector_potential_integral_real(s, s.window_start(), s.window_end());
  CHECK(std::abs(total.x - window.x) < 1e-10);
  CHECK(std::abs(total.y - window.y) < 1e-10);
}

TEST_CASE("property: real-axis integral matches the antiderivative inside the window") {
  const PulseSpec s(0.07, 0.05, Envelope::Cos4, Helicity::Left);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = test::uniform(s.window_start(), s.window_end());
    const double b = test::uniform(a, s.window_end());
    const Vec2 I = pulse::vector_potential_integral_real(s, a, b);
    const CVec2 G = pulse::vector_potential_integral(s, b) - pulse::vector_potential_integral(s, a);
    CHECK(std::abs(I.x - G.x.real()) < 1e-10);
    CHECK(std::abs(I.y - G.y.real()) < 1e-10);
  }
}

TEST_CASE("helicity mirrors the y component") {
  const PulseSpec r(0.05, 0.05, Envelope::Flat, Helicity::Right);
  const PulseSpec l = r.with_helicity(Helicity::Left);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex t = rand_t(0.05);
    CHECK(test::close(pulse::vector_potential(r, t).x, pulse::vector_potential(l, t).x, 1e-14));
    CHECK(test::close(pulse::vector_potential(r, t).y, -pulse::vector_potential(l, t).y, 1e-14));
  }
  CHECK(r.helicity_sign() == 1.0);
  CHECK(l.helicity_sign() == -1.0);
}

TEST_CASE("names and validation") {
  CHECK(pulse::envelope_from_string("cos4") == Envelope::Cos4);
  CHECK(pulse::helicity_from_string(pulse::to_string(Helicity::Left)) == Helicity::Left);
  CHECK_THROWS_AS(pulse::envelope_from_string("gauss"), std::invalid_argument);
  CHECK_THROWS_AS(PulseSpec(0.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(PulseSpec(0.05, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(pulse::intensity_to_field(-1.0), std::domain_error);
}
