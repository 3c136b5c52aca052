#pragma once

// Special Moebius transformations g_beta(z) = (z - beta) / (1 - conj(beta) z)
// of the Poincare disk, their action on configurations, and the inverse of the
// evaluation map (core point, beta) -> g_beta(core point).

#include <cmath>
#include <cstddef>

#include "fourvertex/bicircle.hpp"
#include "fourvertex/curvature.hpp"
#include "fourvertex/error.hpp"
#include "fourvertex/geometry.hpp"

namespace fourvertex {

struct MoebiusParameter {
  Complex beta{};

  MoebiusParameter() = default;
  explicit MoebiusParameter(Complex b) : beta(b) {
    require(std::isfinite(b.real()) && std::isfinite(b.imag()) && std::abs(b) < 1.0,
            ErrorCode::InvalidArgument, "Moebius parameter must satisfy |beta| < 1");
  }
  MoebiusParameter inverse() const { return MoebiusParameter(-beta); }
};

inline Complex moebius_apply(const MoebiusParameter& m, Complex z) {
  return (z - m.beta) / (1.0 - std::conj(m.beta) * z);
}

inline Configuration moebius_on_config(const MoebiusParameter& m, const Configuration& c) {
  std::array<Complex, 4> q{};
  for (std::size_t i = 0; i < 4; ++i) {
    q[i] = moebius_apply(m, c[i]);
    q[i] /= std::abs(q[i]);
  }
  return Configuration(q);
}

/// Continuous lift of u -> arg g_beta(e^{iu}): u + 2 arg(1 - beta e^{-iu}).
/// The second term stays in (-pi, pi) because |beta| < 1.
inline double moebius_lift(const MoebiusParameter& m, double u) {
  const Complex w = 1.0 - m.beta * unit(-u);
  return u + 2.0 * std::atan2(w.imag(), w.real());
}

/// g_beta restricted to the circle, sampled into a piecewise-linear lift.
inline CircleDiffeo to_circle_diffeo(const MoebiusParameter& m, std::size_t samples = 4 * kDefaultGrid) {
  return CircleDiffeo::sample([&](double u) { return moebius_lift(m, u); }, samples);
}

struct EvaluationPreimage {
  Configuration core_point;
  MoebiusParameter m;
};

inline constexpr double kMinGeodesicAngle = 1e-6;

/// Splits a configuration q into a core point P and beta with g_beta(P) = q.
/// The geodesics with ideal ends q1, q3 and q2, q4 meet at -beta. They are
/// intersected as chords in the Klein model, where hyperbolic lines are
/// straight, and the point is carried back to the Poincare disk.
inline EvaluationPreimage evaluation_inverse(const Configuration& q) {
  const Complex d1 = q[2] - q[0];
  const Complex d2 = q[3] - q[1];
  const double denom = cross(d1, d2);
  require(denom != 0.0, ErrorCode::NumericallyDegenerate, "geodesics are parallel");
  const double t = cross(q[1] - q[0], d2) / denom;
  const Complex klein = q[0] + t * d1;
  const double r2 = std::norm(klein);
  require(r2 < 1.0, ErrorCode::NumericallyDegenerate, "geodesic intersection left the disk");
  const Complex w = klein / (1.0 + std::sqrt(1.0 - r2));

  const MoebiusParameter to_origin(w);
  // After moving w to the origin both geodesics are diameters; the angle
  // between them is the hyperbolic angle at the intersection.
  const Complex e1 = moebius_apply(to_origin, q[0]);
  const Complex e2 = moebius_apply(to_origin, q[1]);
  const double angle = std::abs(std::arg(e2 / e1));
  const double folded = std::min(angle, kPi - angle);
  require(folded >= kMinGeodesicAngle, ErrorCode::NumericallyDegenerate, "geodesics nearly tangent");

  return {moebius_on_config(to_origin, q), MoebiusParameter(-w)};
}

}  // namespace fourvertex
