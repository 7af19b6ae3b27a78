#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace larmor {

/// Iterative solver (Newton, fixed point, fit) failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its panel budget.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error estimate " + format(achieved_error) + ")"),
        achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
  }
  double achieved_error_;
};

/// A complex trajectory came too close to r = 0 or crossed the branch cut of sqrt(x^2 + y^2).
class BranchCutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace larmor
