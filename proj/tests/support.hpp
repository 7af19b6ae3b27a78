#pragma once

// Shared helpers for the unit tests: seeded generators and tolerance checks.

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"

namespace larmor::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917u);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline bool close(double a, double b, double abs_tol, double rel_tol = 0.0) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::abs(b);
}
inline bool close(std::complex<double> a, std::complex<double> b, double abs_tol, double rel_tol = 0.0) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::abs(b);
}

}  // namespace larmor::test
