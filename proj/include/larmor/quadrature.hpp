#pragma once

#include <complex>
#include <functional>

namespace larmor::quadrature {

using Complex = std::complex<double>;

struct Options {
  double abs_tol = 1e-12;   // target on the summed error estimate
  int initial_panels = 1;   // equal panels the segment is split into before adapting
  int max_panels = 20000;
};

struct Result {
  Complex value{};
  double error = 0.0;       // summed |K15 - G7| over final panels
  int evaluations = 0;
  bool converged = false;
};

/// Integral of f(z) dz along the straight segment a -> b in the complex plane.
/// Globally adaptive Gauss-Kronrod (7/15) bisection; deterministic for fixed
/// inputs. Never throws; check Result::converged.
Result integrate_segment(const std::function<Complex(Complex)>& f, Complex a, Complex b,
                         const Options& opt = {});

/// As integrate_segment, but throws QuadratureError when not converged.
Complex integrate_segment_or_throw(const std::function<Complex(Complex)>& f, Complex a, Complex b,
                                   const Options& opt = {});

/// Real integrand on [a, b].
Result integrate_real(const std::function<double(double)>& f, double a, double b, const Options& opt = {});

}  // namespace larmor::quadrature
