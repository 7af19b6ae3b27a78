#include <cmath>
#include <stdexcept>
#include <vector>

#include "larmor/armphase.hpp"
#include "larmor/clock.hpp"
#include "larmor/units.hpp"
#include "support.hpp"

using namespace larmor;
using clock::AngleMode;
using clock::MatrixElementPair;

namespace {

constexpr double kPi = units::kPi;

double wrap(double x) { return std::remainder(x, 2 * kPi); }

// arg(a_down conj(a_up)) with a_down = T3 e^{-i E3 t}, a_up = (2 T1 e^{-i E1 t} + T3 e^{-i E3 t}) / 3
// and E3 = 0, E1 = dE (the j = 1/2 hole lies deeper)
double hole_rotation_from_amplitudes(Complex T3, Complex T1, double dE, double t) {
  const Complex down = T3;
  const Complex up = (2.0 * T1 * std::exp(Complex(0.0, -dE * t)) + T3) / 3.0;
  return std::arg(down * std::conj(up));
}

MatrixElementPair random_pair() {
  const double ratio = std::exp(test::uniform(std::log(0.2), std::log(5.0)));
  const double d13 = test::uniform(-kPi + 1e-6, kPi - 1e-6);
  const double base = test::uniform(-kPi, kPi);
  const Complex R1 = std::polar(1.0, base + d13);
  const Complex R3 = std::polar(ratio, base);
  return {R3, R1};
}

}  // namespace

TEST_CASE("one-photon rotation") {
  CHECK(clock::one_photon_rotation({1.3, 1.3}) == 0.0);
  const MatrixElementPair m{1.0, std::polar(1.0, 0.3)};
  CHECK(std::abs(clock::one_photon_rotation(m) - clock::one_photon_rotation_tangent(m)) < 1e-12);
  // direct complex evaluation of a_up conj(a_down)
  const Complex down = (1.0 + 2.0 * std::polar(1.0, 0.3)) / 3.0;
  CHECK(std::abs(clock::one_photon_rotation(m) - std::arg(1.0 * std::conj(down))) < 1e-15);
  CHECK_THROWS_AS(clock::one_photon_rotation({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(clock::one_photon_rotation_tangent({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("small relative phase") {
  for (double delta : {1e-2, 3e-3, 1e-3}) {
    const MatrixElementPair m{1.0, std::polar(1.0, delta)};
    // rotation of -(2/3) delta, cubic remainder
    CHECK(std::abs(clock::one_photon_rotation(m) + 2.0 / 3.0 * delta) < delta * delta * delta);
  }
}

TEST_CASE("property: arg form equals the tangent form") {
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_pair();
    CHECK(std::abs(wrap(clock::one_photon_rotation(m) - clock::one_photon_rotation_tangent(m))) < 1e-12);
  }
}

TEST_CASE("Wigner-Smith delay") {
  CHECK(clock::wigner_smith_delay([](double E) { return -2.5 * E; }, 0.7, 0.01) == doctest::Approx(2.5));
  CHECK(clock::wigner_smith_delay([](double) { return 1.2; }, 0.7, 0.01) == 0.0);
  // cubic phase: central-difference error h^2 phi''' / 6 drops four-fold on halving h
  auto phi = [](double E) { return E * E * E - 0.4 * E * E; };
  const double E = 0.9, exact = -(3 * E * E - 0.8 * E);
  const double e1 = clock::wigner_smith_delay(phi, E, 0.02) - exact;
  const double e2 = clock::wigner_smith_delay(phi, E, 0.01) - exact;
  CHECK(std::abs(e1 / e2 - 4.0) < 1e-3);
  CHECK(std::abs(e1 + 0.02 * 0.02) < 1e-12);
  CHECK_THROWS_AS(clock::wigner_smith_delay(phi, E, 0.0), std::invalid_argument);
}

TEST_CASE("calibration from a smooth phase model") {
  // R3(E) = R1(E - dE); rotation against the Wigner-Smith prediction
  auto phi1 = [](double E) { return -2.5 * E + 0.8 * E * E; };
  const double E = 1.1;
  auto error = [&](double dE) {
    const MatrixElementPair m{std::polar(1.0, phi1(E - dE)), std::polar(1.0, phi1(E))};
    const double tau = clock::wigner_smith_delay(phi1, E, 1e-5);
    return clock::one_photon_rotation(m) - clock::calibrated_rotation(tau, dE, 1.0);
  };
  const double e1 = error(0.04), e2 = error(0.02);
  CHECK(std::abs(e1 / e2 - 4.0) < 0.2);
  // first order: (2/3) tau dE
  const double tau = 2.5 - 1.6 * E;
  CHECK(std::abs(clock::calibrated_rotation(tau, 1e-3, 1.0) - 2.0 / 3.0 * tau * 1e-3) < 1e-8);
}

TEST_CASE("hole-spin rotation") {
  CHECK(clock::hole_spin_rotation({1.0, 1.0}, 0.02444, 0.0) == 0.0);
  const double dE = 0.02444;
  SUBCASE("half period, equal arms") {
    const double t = kPi / dE;
    CHECK(std::abs(clock::hole_spin_rotation({1.0, 1.0}, dE, t) - hole_rotation_from_amplitudes(1.0, 1.0, dE, t)) <
          1e-12);
  }
  SUBCASE("property: amplitude-level oracle") {
    for (int trial = 0; trial < 300; ++trial) {
      const auto m = random_pair();
      const double t = test::uniform(0.0, 1000.0);
      CHECK(std::abs(wrap(clock::hole_spin_rotation(m, dE, t) -
                          hole_rotation_from_amplitudes(m.amp_upper, m.amp_lower, dE, t))) < 1e-12);
    }
  }
  SUBCASE("property: t = 0 is the one-photon reading with T for R") {
    for (int trial = 0; trial < 200; ++trial) {
      const auto m = random_pair();
      CHECK(std::abs(wrap(clock::hole_spin_rotation(m, dE, 0.0) - clock::one_photon_rotation(m))) < 1e-12);
    }
  }
  SUBCASE("periodicity") {
    const MatrixElementPair m{0.8, std::polar(1.1, -0.4)};
    for (double t : {0.0, 33.0, 171.0}) {
      const double a = clock::hole_spin_rotation(m, dE, t);
      const double b = clock::hole_spin_rotation(m, dE, t + 2 * kPi / dE);
      CHECK(std::abs(wrap(a - b)) < 1e-10);
    }
  }
  SUBCASE("accumulated mode is continuous and winds") {
    const MatrixElementPair m{1.0, 1.0};  // 0.5 |T3|/|T1| < 1: winds once per period
    std::vector<double> t;
    for (int i = 0; i <= 2000; ++i) t.push_back(i * (3 * 2 * kPi / dE) / 2000);
    const auto a = clock::hole_spin_rotation_series(m, dE, t);
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(std::abs(a[i] - a[i - 1]) < 0.1);
    CHECK(std::abs(std::abs(a.back() - a.front()) - 3 * 2 * kPi) < 1e-6);
    // wrapped and accumulated agree modulo 2 pi
    for (std::size_t i = 0; i < t.size(); i += 97)
      CHECK(std::abs(wrap(a[i] - clock::hole_spin_rotation(m, dE, t[i]))) < 1e-12);
  }
  CHECK_THROWS_AS(clock::hole_spin_rotation({1.0, 1.0}, dE, -1.0), std::domain_error);
}

TEST_CASE("delays") {
  const double dE = 0.02444;
  const auto d = clock::extract_times(-dE / std::pow(0.5, 1.5), -0.0150, dE);
  CHECK(d.tau_si == doctest::Approx(2.828427).epsilon(1e-6));
  CHECK(units::au_to_as(d.tau_si) == doctest::Approx(68.4).epsilon(1e-3));
  CHECK(d.tau_eh == doctest::Approx(0.6137).epsilon(1e-3));
  CHECK(units::au_to_as(d.tau_eh) == doctest::Approx(14.85).epsilon(2e-3));
  CHECK(clock::extract_times(-0.05, 0.0, dE).tau_eh == 0.0);
  CHECK_THROWS_AS(clock::extract_times(-0.05, 0.0, 0.0), std::domain_error);
  CHECK(clock::attoclock_offset(0.0, 0.05) == 0.0);
  CHECK(clock::attoclock_offset(2.828, 0.0465) == doctest::Approx(0.1315).epsilon(1e-3));
  CHECK(clock::attoclock_offset(-2.828, 0.093) == doctest::Approx(2 * clock::attoclock_offset(2.828, 0.0465)));
}

TEST_CASE("property: closed-form delays versus intensity") {
  const double ip = 0.5145, dE = 0.02444;
  double tau0 = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double F = 0.04 + 0.005 * k;
    const auto [c, dd] = armphase::tunnelling_limit_phases(F, ip, dE);
    const auto d = clock::extract_times(c, dd, dE);
    if (k == 0) tau0 = d.tau_si;
    CHECK(d.tau_si == tau0);
    CHECK(std::abs(d.tau_eh / (F * F) - 0.4 / std::pow(ip, 2.5) / dE) < 1e-10);
  }
}

TEST_CASE("reading identities") {
  for (int trial = 0; trial < 100; ++trial) {
    const double c = test::uniform(-0.1, 0.0), d = test::uniform(-0.03, 0.0), dE = test::uniform(0.01, 0.05);
    const auto r = clock::ClockReading::from_phases(c, d, -1e-7, dE, test::uniform(0.5, 2.0));
    CHECK(std::abs(r.tau_si + r.dphi13_c / dE) <= 1e-12 * std::abs(r.tau_si));
    CHECK(std::abs(r.tau_eh + r.dphi13_d / dE) <= 1e-12 * std::abs(r.tau_eh));
    CHECK(r.tau_si_as() == doctest::Approx(r.tau_si * units::kAuTimeAs));
  }
}
