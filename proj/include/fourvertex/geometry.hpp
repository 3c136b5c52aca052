#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace fourvertex {

using Complex = std::complex<double>;
/// Plane points and vectors are complex numbers throughout.
using Point = Complex;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Reduce t into [0, 2pi).
inline double wrap_two_pi(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Reduce an angle into (-pi, pi].
inline double wrap_pi(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

inline Complex unit(double angle) { return std::polar(1.0, angle); }

inline double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }
inline double dot(Complex u, Complex v) { return u.real() * v.real() + u.imag() * v.imag(); }

namespace detail {

inline void two_product(double a, double b, double& hi, double& lo) {
  hi = a * b;
  lo = std::fma(a, b, -hi);
}

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

// Shewchuk's grow-expansion with zero elimination. `e` is nonoverlapping and
// sorted by increasing magnitude, and stays so.
inline void grow_expansion(std::vector<double>& e, double b) {
  double q = b;
  std::size_t out = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double s, h;
    two_sum(q, e[i], s, h);
    q = s;
    if (h != 0.0) e[out++] = h;
  }
  e.resize(out);
  if (q != 0.0 || e.empty()) e.push_back(q);
}

inline int exact_orient_sign(Point a, Point b, Point c) {
  const double ax = a.real(), ay = a.imag();
  const double bx = b.real(), by = b.imag();
  const double cx = c.real(), cy = c.imag();
  // (bx-ax)(cy-ay) - (by-ay)(cx-ax), expanded; the ax*ay terms cancel.
  const double f[6][2] = {{bx, cy}, {-bx, ay}, {-ax, cy}, {-by, cx}, {by, ax}, {ay, cx}};
  std::vector<double> e;
  e.reserve(16);
  for (const auto& term : f) {
    double hi, lo;
    two_product(term[0], term[1], hi, lo);
    grow_expansion(e, lo);
    grow_expansion(e, hi);
  }
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (*it > 0.0) return 1;
    if (*it < 0.0) return -1;
  }
  return 0;
}

}  // namespace detail

/// Sign of the orientation determinant of (a, b, c): +1 for a left turn,
/// -1 for a right turn, 0 for collinear. Exact for finite double inputs
/// away from underflow.
inline int orientation(Point a, Point b, Point c) {
  const double l = (b.real() - a.real()) * (c.imag() - a.imag());
  const double r = (b.imag() - a.imag()) * (c.real() - a.real());
  const double det = l - r;
  const double bound = 3.3306690738754716e-16 * (std::abs(l) + std::abs(r));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return detail::exact_orient_sign(a, b, c);
}

namespace detail {

inline bool within_box(Point p, Point q, Point r) {
  return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
         std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
}

}  // namespace detail

/// Closed segments [p1, p2] and [p3, p4] share at least one point.
inline bool segments_intersect(Point p1, Point p2, Point p3, Point p4) {
  const int d1 = orientation(p3, p4, p1);
  const int d2 = orientation(p3, p4, p2);
  const int d3 = orientation(p1, p2, p3);
  const int d4 = orientation(p1, p2, p4);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && detail::within_box(p3, p4, p1)) return true;
  if (d2 == 0 && detail::within_box(p3, p4, p2)) return true;
  if (d3 == 0 && detail::within_box(p1, p2, p3)) return true;
  if (d4 == 0 && detail::within_box(p1, p2, p4)) return true;
  return false;
}

}  // namespace fourvertex
