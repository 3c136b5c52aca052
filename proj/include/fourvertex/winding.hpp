#pragma once

#include <cmath>
#include <span>

#include "fourvertex/error.hpp"
#include "fourvertex/geometry.hpp"

namespace fourvertex {

inline constexpr double kMaxWindingStep = kPi / 2;

/// Winding number about the origin of the closed polygonal loop through
/// `points` (the last point joins back to the first). Consecutive points must
/// turn by less than pi/2 around the origin.
inline int winding_number(std::span<const Complex> points) {
  require(points.size() >= 3, ErrorCode::InsufficientDensity, "loop needs at least three points");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex z0 = points[i];
    const Complex z1 = points[(i + 1) % points.size()];
    require(z0 != Complex{} && z1 != Complex{}, ErrorCode::OriginOnLoop, "loop passes through the origin");
    const double step = std::arg(z1 / z0);
    require(std::abs(step) < kMaxWindingStep, ErrorCode::InsufficientDensity,
            "angular increment exceeds pi/2; sample the loop more densely");
    total += step;
  }
  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  require(std::abs(turns - rounded) < 0.01, ErrorCode::InsufficientDensity, "winding sum is not near an integer");
  return static_cast<int>(rounded);
}

}  // namespace fourvertex
