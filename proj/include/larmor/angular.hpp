#pragma once

// Angular-momentum algebra for small quantum numbers (j <= 9/2 is the
// supported range; the exact factorial table covers arguments up to 20).
//
// Phase convention: Condon-Shortley throughout. Clebsch-Gordan coefficients
// C(j1 m1; j2 m2 | J M) are real, and C(j1 j1; j2 (J-j1) | J J) > 0.

#include <compare>
#include <string>

namespace larmor::angular {

/// Half-integer quantum number stored as twice its value.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt from_twice(int t) noexcept { return HalfInt{t}; }
  static constexpr HalfInt integer(int n) noexcept { return HalfInt{2 * n}; }

  constexpr double value() const noexcept { return 0.5 * twice; }
  constexpr bool is_integer() const noexcept { return twice % 2 == 0; }

  constexpr HalfInt operator-() const noexcept { return HalfInt{-twice}; }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) noexcept { return HalfInt{a.twice + b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) noexcept { return HalfInt{a.twice - b.twice}; }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  std::string str() const;
};

/// true when m is an allowed projection of j: |m| <= j and j - m integer.
bool valid_projection(HalfInt j, HalfInt m) noexcept;

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3) by the Racah sum.
/// Throws std::domain_error for negative j and std::invalid_argument when
/// j - m is not an integer. Projections with |m| > j give 0.
double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3);

/// Clebsch-Gordan coefficient <j1 m1, j2 m2 | J M>, evaluated from its own
/// Racah sum (not via wigner3j).
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

/// Legendre polynomial P_n(x), |x| <= 1.
double legendre_p(int n, double x);

}  // namespace larmor::angular
