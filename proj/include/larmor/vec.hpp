#pragma once

#include <cmath>
#include <complex>

namespace larmor {

using Complex = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
  double angle() const { return std::atan2(y, x); }
  static Vec2 polar(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }
};

/// Complexified 2-vector, for positions and velocities at complex time.
struct CVec2 {
  Complex x{};
  Complex y{};

  CVec2() = default;
  CVec2(Complex x_, Complex y_) : x(x_), y(y_) {}
  CVec2(const Vec2& v) : x(v.x), y(v.y) {}  // NOLINT(google-explicit-constructor)

  CVec2& operator+=(const CVec2& o) { x += o.x; y += o.y; return *this; }
  CVec2& operator-=(const CVec2& o) { x -= o.x; y -= o.y; return *this; }
  friend CVec2 operator+(CVec2 a, const CVec2& b) { return a += b; }
  friend CVec2 operator-(CVec2 a, const CVec2& b) { return a -= b; }
  friend CVec2 operator*(Complex s, const CVec2& v) { return {s * v.x, s * v.y}; }
  friend CVec2 operator*(const CVec2& v, Complex s) { return {s * v.x, s * v.y}; }
  CVec2 conj() const { return {std::conj(x), std::conj(y)}; }
  Vec2 real() const { return {x.real(), y.real()}; }
  Vec2 imag() const { return {x.imag(), y.imag()}; }
  /// Bilinear (not Hermitian) square x^2 + y^2.
  Complex square() const { return x * x + y * y; }
};

inline Complex dot(const CVec2& a, const CVec2& b) { return a.x * b.x + a.y * b.y; }

}  // namespace larmor
