#pragma once

// Four ordered points on the unit circle parameterize every two-valued step
// curvature a, b, a, b. This header holds that configuration space, its core
// (configurations whose curves close), reduced tetrahedron coordinates, and
// the closed-form error map.

#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "fourvertex/error.hpp"
#include "fourvertex/geometry.hpp"
#include "fourvertex/integrator.hpp"
#include "fourvertex/winding.hpp"

namespace fourvertex {

inline constexpr double kUnitTolerance = 1e-12;

/// Ordered counterclockwise 4-tuple of distinct unit complex numbers.
class Configuration {
 public:
  explicit Configuration(std::array<Complex, 4> p) : p_(p) {
    for (const Complex& z : p_) {
      require(std::abs(std::abs(z) - 1.0) <= kUnitTolerance, ErrorCode::InvalidArgument,
              "configuration points must lie on the unit circle");
    }
    const auto g = offsets();
    require(g[0] > 0.0 && g[0] < g[1] && g[1] < g[2] && g[2] < kTwoPi, ErrorCode::InvalidArgument,
            "configuration points must be distinct and counterclockwise");
  }

  /// Points at the given angles.
  static Configuration from_angles(std::array<double, 4> angles) {
    return Configuration({unit(angles[0]), unit(angles[1]), unit(angles[2]), unit(angles[3])});
  }

  const Complex& operator[](std::size_t i) const { return p_[i]; }
  const std::array<Complex, 4>& points() const noexcept { return p_; }

  /// Counterclockwise angles from p1 to p2, p3, p4, each in (0, 2pi).
  std::array<double, 3> offsets() const {
    std::array<double, 3> g{};
    for (std::size_t i = 0; i < 3; ++i) g[i] = wrap_two_pi(std::arg(p_[i + 1] * std::conj(p_[0])));
    return g;
  }

  /// Lengths of the arcs p1p2, p2p3, p3p4, p4p1.
  std::array<double, 4> arc_lengths() const {
    const auto g = offsets();
    return {g[0], g[1] - g[0], g[2] - g[1], kTwoPi - g[2]};
  }

 private:
  std::array<Complex, 4> p_;
};

/// The point (1, i, -1, -i) of the core.
inline Configuration base_configuration() { return Configuration({1.0, kI, -1.0, -kI}); }

struct ReducedConfigCoords {
  double x = 0.25;
  double y = 0.5;
  double z = 0.75;

  ReducedConfigCoords() = default;
  ReducedConfigCoords(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    require(0.0 < x && x < y && y < z && z < 1.0, ErrorCode::InvalidArgument,
            "reduced coordinates need 0 < x < y < z < 1");
  }
};

inline Complex core_residual(const Configuration& c) { return c[0] - c[1] + c[2] - c[3]; }

inline bool is_core(const Configuration& c, double tol = 1e-9) { return std::abs(core_residual(c)) < tol; }

/// (rotation, coordinates) with c = rotation * (1, e^{2 pi i x}, e^{2 pi i y}, e^{2 pi i z}).
inline std::pair<Complex, ReducedConfigCoords> to_reduced(const Configuration& c) {
  const auto g = c.offsets();
  return {c[0], ReducedConfigCoords(g[0] / kTwoPi, g[1] / kTwoPi, g[2] / kTwoPi)};
}

inline Configuration from_reduced(Complex rotation, const ReducedConfigCoords& r) {
  return Configuration({rotation, rotation * unit(kTwoPi * r.x), rotation * unit(kTwoPi * r.y),
                        rotation * unit(kTwoPi * r.z)});
}

/// The same configuration rotated so that p1 = 1.
inline Configuration reduce(const Configuration& c) {
  const Complex inv = std::conj(c[0]);
  return Configuration({1.0, c[1] * inv, c[2] * inv, c[3] * inv});
}

/// Division points of the same step curve measured by tangent angle, together
/// with the rescaled curvature values that give total curvature 2pi.
struct AngleConfig {
  Configuration theta_config;
  double a_scaled;
  double b_scaled;
};

inline AngleConfig arclength_to_angle_config(const Configuration& c, double a, double b) {
  require(0.0 < a && a <= b, ErrorCode::InvalidArgument, "need 0 < a <= b");
  const auto len = reduce(c).arc_lengths();
  const double sigma = kTwoPi / (a * (len[0] + len[2]) + b * (len[1] + len[3]));
  const double ap = a * sigma;
  const double bp = b * sigma;
  const double t2 = ap * len[0];
  const double t3 = t2 + bp * len[1];
  const double t4 = t3 + ap * len[2];
  return {Configuration({1.0, unit(t2), unit(t3), unit(t4)}), ap, bp};
}

/// Inverse of arclength_to_angle_config for a reduced tangent-angle configuration.
inline Configuration angle_to_arclength_config(const Configuration& q, double a, double b) {
  require(0.0 < a && a <= b, ErrorCode::InvalidArgument, "need 0 < a <= b");
  const auto th = reduce(q).arc_lengths();  // tangent-angle spans of the four arcs
  // Arc lengths are th_i / (sigma * value_i) and sum to 2pi.
  const double sigma = (th[0] / a + th[1] / b + th[2] / a + th[3] / b) / kTwoPi;
  const double l1 = th[0] / (sigma * a);
  const double l2 = th[1] / (sigma * b);
  const double l3 = th[2] / (sigma * a);
  return Configuration({1.0, unit(l1), unit(l1 + l2), unit(l1 + l2 + l3)});
}

/// Error vector of the curve that starts at p1 heading along +x and runs along
/// arcs of curvature a(P), b(P), a(P), b(P) (first arc carries a).
inline ErrorVector closed_form_error(const Configuration& c, double a, double b) {
  const AngleConfig ac = arclength_to_angle_config(c, a, b);
  const auto& q = ac.theta_config;
  const Complex prefactor = 1.0 / (kI * ac.b_scaled) - 1.0 / (kI * ac.a_scaled);
  return {prefactor * (1.0 - q[1] + q[2] - q[3])};
}

/// Same error, through exact arc stepping.
inline ErrorVector integrated_error(const Configuration& c, double a, double b) {
  const auto len = reduce(c).arc_lengths();
  const double sigma = kTwoPi / (a * (len[0] + len[2]) + b * (len[1] + len[3]));
  const std::array<Arc, 4> arcs{Arc{len[0], a * sigma}, Arc{len[1], b * sigma}, Arc{len[2], a * sigma},
                                Arc{len[3], b * sigma}};
  return error_vector(integrate_arcs(arcs));
}

/// Winding number of the error map along a closed loop of configurations.
inline int error_winding_on_core_link(double a, double b, std::span<const Configuration> loop) {
  std::vector<Complex> errors;
  errors.reserve(loop.size());
  for (const auto& c : loop) {
    const ErrorVector e = closed_form_error(c, a, b);
    require(e.norm() >= 1e-12, ErrorCode::LoopTouchesCore, "error map vanishes along the loop");
    errors.push_back(e.e);
  }
  return winding_number(errors);
}

}  // namespace fourvertex
