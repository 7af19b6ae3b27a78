#include "larmor/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>

#include <boost/math/special_functions/legendre.hpp>

namespace larmor::angular {

namespace {

constexpr int kMaxFactorial = 20;

constexpr std::array<std::uint64_t, kMaxFactorial + 1> make_factorials() {
  std::array<std::uint64_t, kMaxFactorial + 1> f{};
  f[0] = 1;
  for (int i = 1; i <= kMaxFactorial; ++i) f[i] = f[i - 1] * static_cast<std::uint64_t>(i);
  return f;
}

constexpr auto kFactorials = make_factorials();

long double fact(int n) {
  if (n < 0) throw std::logic_error("negative factorial argument");
  if (n > kMaxFactorial) throw std::domain_error("angular momentum beyond exact factorial range");
  return static_cast<long double>(kFactorials[n]);
}

// (a + b + c) / 2 for twice-values already known to have an even sum
int half_sum(int twice) { return twice / 2; }

void require_nonnegative(HalfInt j) {
  if (j.twice < 0) throw std::domain_error("negative angular momentum " + j.str());
}

void require_parity(HalfInt j, HalfInt m) {
  if ((j.twice - m.twice) % 2 != 0)
    throw std::invalid_argument("projection " + m.str() + " incompatible with momentum " + j.str());
}

bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  if ((a.twice + b.twice + c.twice) % 2 != 0) return false;
  return c.twice >= std::abs(a.twice - b.twice) && c.twice <= a.twice + b.twice;
}

}  // namespace

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

bool valid_projection(HalfInt j, HalfInt m) noexcept {
  return j.twice >= 0 && std::abs(m.twice) <= j.twice && (j.twice - m.twice) % 2 == 0;
}

double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  require_nonnegative(j1);
  require_nonnegative(j2);
  require_nonnegative(j3);
  require_parity(j1, m1);
  require_parity(j2, m2);
  require_parity(j3, m3);

  if (m1.twice + m2.twice + m3.twice != 0) return 0.0;
  if (!triangle(j1, j2, j3)) return 0.0;
  if (std::abs(m1.twice) > j1.twice || std::abs(m2.twice) > j2.twice || std::abs(m3.twice) > j3.twice)
    return 0.0;

  const int a = half_sum(j1.twice + j2.twice - j3.twice);   // j1 + j2 - j3
  const int b = half_sum(j1.twice - m1.twice);              // j1 - m1
  const int c = half_sum(j2.twice + m2.twice);              // j2 + m2
  const int d = half_sum(j3.twice - j2.twice + m1.twice);   // j3 - j2 + m1
  const int e = half_sum(j3.twice - j1.twice - m2.twice);   // j3 - j1 - m2

  const int kmin = std::max({0, -d, -e});
  const int kmax = std::min({a, b, c});

  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term =
        1.0L / (fact(k) * fact(a - k) * fact(b - k) * fact(c - k) * fact(d + k) * fact(e + k));
    sum += (k % 2 == 0) ? term : -term;
  }

  const long double delta = fact(a) * fact(half_sum(j1.twice - j2.twice + j3.twice)) *
                            fact(half_sum(-j1.twice + j2.twice + j3.twice)) /
                            fact(half_sum(j1.twice + j2.twice + j3.twice) + 1);
  const long double projections =
      fact(half_sum(j1.twice + m1.twice)) * fact(b) * fact(c) * fact(half_sum(j2.twice - m2.twice)) *
      fact(half_sum(j3.twice + m3.twice)) * fact(half_sum(j3.twice - m3.twice));

  // (-1)^(j1 - j2 - m3); the exponent is an integer by construction
  const int phase_exp = half_sum(j1.twice - j2.twice - m3.twice);
  const long double phase = (std::abs(phase_exp) % 2 == 0) ? 1.0L : -1.0L;
  return static_cast<double>(phase * std::sqrt(delta * projections) * sum);
}

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  require_nonnegative(j1);
  require_nonnegative(j2);
  require_nonnegative(J);
  require_parity(j1, m1);
  require_parity(j2, m2);
  require_parity(J, M);

  if (m1.twice + m2.twice != M.twice) return 0.0;
  if (!triangle(j1, j2, J)) return 0.0;
  if (std::abs(m1.twice) > j1.twice || std::abs(m2.twice) > j2.twice || std::abs(M.twice) > J.twice)
    return 0.0;

  const int a = half_sum(j1.twice + j2.twice - J.twice);  // j1 + j2 - J
  const int b = half_sum(j1.twice - m1.twice);            // j1 - m1
  const int c = half_sum(j2.twice + m2.twice);            // j2 + m2
  const int d = half_sum(J.twice - j2.twice + m1.twice);  // J - j2 + m1
  const int e = half_sum(J.twice - j1.twice - m2.twice);  // J - j1 - m2

  const int kmin = std::max({0, -d, -e});
  const int kmax = std::min({a, b, c});

  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term =
        1.0L / (fact(k) * fact(a - k) * fact(b - k) * fact(c - k) * fact(d + k) * fact(e + k));
    sum += (k % 2 == 0) ? term : -term;
  }

  const long double norm = (J.twice + 1) * fact(half_sum(J.twice + j1.twice - j2.twice)) *
                           fact(half_sum(J.twice - j1.twice + j2.twice)) * fact(a) /
                           fact(half_sum(j1.twice + j2.twice + J.twice) + 1);
  const long double projections = fact(half_sum(J.twice + M.twice)) * fact(half_sum(J.twice - M.twice)) *
                                  fact(b) * fact(half_sum(j1.twice + m1.twice)) *
                                  fact(half_sum(j2.twice - m2.twice)) * fact(c);
  return static_cast<double>(std::sqrt(norm * projections) * sum);
}

double legendre_p(int n, double x) {
  if (n < 0) throw std::domain_error("Legendre degree must be non-negative");
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("Legendre argument outside [-1, 1]");
  return boost::math::legendre_p(n, x);
}

}  // namespace larmor::angular
