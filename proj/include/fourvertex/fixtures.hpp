#pragma once

// Reference curves: the 2:1 ellipse, the limacon r = -1 - 2 sin(theta), the
// bicircle, and two random families of smooth simple closed curves.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fourvertex/curvature.hpp"
#include "fourvertex/geometry.hpp"
#include "fourvertex/integrator.hpp"

namespace fourvertex::fixtures {

/// x = a cos t, y = b sin t.
inline PlanarCurve ellipse(double a, double b, std::size_t n) {
  return curve_from_parametric([=](double t) { return Point(a * std::cos(t), b * std::sin(t)); },
                               [=](double t) { return Point(-a * std::sin(t), b * std::cos(t)); }, n);
}

inline double ellipse_curvature(double a, double b, double t) {
  const double s = std::sin(t), c = std::cos(t);
  return a * b / std::pow(a * a * s * s + b * b * c * c, 1.5);
}

/// Polar curve r = -1 - 2 sin(theta): a large loop with a small loop inside.
inline PlanarCurve limacon(std::size_t n) {
  auto r = [](double t) { return -1.0 - 2.0 * std::sin(t); };
  auto dr = [](double t) { return -2.0 * std::cos(t); };
  return curve_from_parametric([=](double t) { return r(t) * unit(t); },
                               [=](double t) { return (dr(t) + kI * r(t)) * unit(t); }, n);
}

inline double limacon_curvature(double t) {
  const double s = std::sin(t);
  return (9.0 + 6.0 * s) / std::pow(5.0 + 4.0 * s, 1.5);
}

/// Closed curve with curvature a, b, a, b on equal quarters, normalized to
/// total curvature 2pi.
inline PlanarCurve bicircle(double a, double b, std::size_t grid = kDefaultGrid) {
  const StepSpec step(a, b);
  const double c0 = kTwoPi / step.total();
  std::vector<Arc> arcs = step_arcs(step);
  for (Arc& arc : arcs) arc.curvature *= c0;
  PlanarCurve c = integrate_arcs(arcs, kTwoPi / static_cast<double>(grid));
  c.closed = true;
  return c;
}

/// Trigonometric polynomial sum_k (cos_k cos(k x) + sin_k sin(k x)).
struct TrigSeries {
  double constant = 0.0;
  std::vector<int> k;
  std::vector<double> cos_coef;
  std::vector<double> sin_coef;

  double operator()(double x) const {
    double v = constant;
    for (std::size_t i = 0; i < k.size(); ++i) v += cos_coef[i] * std::cos(k[i] * x) + sin_coef[i] * std::sin(k[i] * x);
    return v;
  }
  double d1(double x) const {
    double v = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      v += k[i] * (-cos_coef[i] * std::sin(k[i] * x) + sin_coef[i] * std::cos(k[i] * x));
    }
    return v;
  }
};

/// Convex curve with support function h(theta) = 1 + sum_{k>=2} ...; the
/// radius of curvature h + h'' stays above 1 - budget > 0.
inline PlanarCurve support_curve(const TrigSeries& h, std::size_t n) {
  return curve_from_parametric(
      [&](double t) { return (h(t) + kI * h.d1(t)) * unit(t); },
      [&](double t) {
        double rho = h.constant;
        for (std::size_t i = 0; i < h.k.size(); ++i) {
          const double f = 1.0 - static_cast<double>(h.k[i] * h.k[i]);
          rho += f * (h.cos_coef[i] * std::cos(h.k[i] * t) + h.sin_coef[i] * std::sin(h.k[i] * t));
        }
        return rho * unit(t + kPi / 2);
      },
      n);
}

/// Star-shaped polar curve r(theta) > 0.
inline PlanarCurve star_curve(const TrigSeries& r, std::size_t n) {
  return curve_from_parametric([&](double t) { return r(t) * unit(t); },
                               [&](double t) { return (r.d1(t) + kI * r(t)) * unit(t); }, n);
}

inline TrigSeries random_support_function(std::mt19937_64& rng, int max_k = 6, double budget = 0.8) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigSeries h;
  h.constant = 1.0;
  double weight = 0.0;
  for (int k = 2; k <= max_k; ++k) {
    h.k.push_back(k);
    h.cos_coef.push_back(u(rng));
    h.sin_coef.push_back(u(rng));
    weight += (k * k - 1) * (std::abs(h.cos_coef.back()) + std::abs(h.sin_coef.back()));
  }
  const double scale = budget * std::uniform_real_distribution<double>(0.05, 1.0)(rng) / weight;
  for (auto& c : h.cos_coef) c *= scale;
  for (auto& c : h.sin_coef) c *= scale;
  return h;
}

inline TrigSeries random_radius_function(std::mt19937_64& rng, int max_k = 5, double budget = 0.7) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigSeries r;
  r.constant = 1.0;
  double weight = 0.0;
  for (int k = 1; k <= max_k; ++k) {
    r.k.push_back(k);
    r.cos_coef.push_back(u(rng));
    r.sin_coef.push_back(u(rng));
    weight += std::abs(r.cos_coef.back()) + std::abs(r.sin_coef.back());
  }
  const double scale = budget * std::uniform_real_distribution<double>(0.05, 1.0)(rng) / weight;
  for (auto& c : r.cos_coef) c *= scale;
  for (auto& c : r.sin_coef) c *= scale;
  return r;
}

/// Draws the next corpus curve: convex when `convex`, star-shaped otherwise,
/// with the highest harmonic drawn per curve.
inline PlanarCurve random_curve(std::mt19937_64& rng, bool convex, std::size_t n = kDefaultGrid) {
  if (convex) {
    const int top = std::uniform_int_distribution<int>(2, 6)(rng);
    return support_curve(random_support_function(rng, top), n);
  }
  const int top = std::uniform_int_distribution<int>(1, 5)(rng);
  return star_curve(random_radius_function(rng, top), n);
}

/// Calls `visit(index, curve)` for `count` curves alternating between the
/// two families.
template <typename Visit>
void for_each_corpus_curve(std::size_t count, std::uint64_t seed, Visit&& visit, std::size_t n = kDefaultGrid) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) visit(i, random_curve(rng, i % 2 == 0, n));
}

}  // namespace fourvertex::fixtures
