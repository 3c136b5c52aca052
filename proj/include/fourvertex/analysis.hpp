#pragma once

// Analysis of closed curves: vertices, the circumscribed circle, the
// components where the curve meets it, and Osserman's vertex bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fourvertex/curvature.hpp"
#include "fourvertex/error.hpp"
#include "fourvertex/geometry.hpp"
#include "fourvertex/integrator.hpp"

namespace fourvertex {

struct EnclosingCircle {
  Point center{};
  double radius = 0.0;
  std::vector<Point> support;  ///< points that determine the circle (at most 3)

  bool contains(Point p, double rel = 1e-12) const {
    return std::abs(p - center) <= radius * (1.0 + rel) + 1e-300;
  }
};

namespace detail {

inline EnclosingCircle circle_two(Point a, Point b) {
  const Point c = 0.5 * (a + b);
  return {c, std::max(std::abs(a - c), std::abs(b - c)), {a, b}};
}

inline EnclosingCircle circle_three(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  if (d == 0.0 || !std::isfinite(1.0 / d)) {
    // Collinear: the widest pair decides.
    EnclosingCircle best = circle_two(a, b);
    for (const auto& cand : {circle_two(a, c), circle_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = std::norm(ab);
  const double ac2 = std::norm(ac);
  const Point off((ac.imag() * ab2 - ab.imag() * ac2) / d, (ab.real() * ac2 - ac.real() * ab2) / d);
  const Point center = a + off;
  const double r = std::max({std::abs(a - center), std::abs(b - center), std::abs(c - center)});
  return {center, r, {a, b, c}};
}

}  // namespace detail

/// Smallest circle containing every point. Randomized incremental
/// construction over a shuffle fixed by `seed`, then a containment pass that
/// widens the radius to cover rounding.
inline EnclosingCircle min_enclosing_circle(std::span<const Point> points, std::uint64_t seed = 0x5eedULL) {
  require(!points.empty(), ErrorCode::InvalidArgument, "need at least one point");
  std::vector<Point> p(points.begin(), points.end());
  std::mt19937_64 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);

  EnclosingCircle c{p[0], 0.0, {p[0]}};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (c.contains(p[i])) continue;
    c = {p[i], 0.0, {p[i]}};
    for (std::size_t j = 0; j < i; ++j) {
      if (c.contains(p[j])) continue;
      c = detail::circle_two(p[i], p[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (c.contains(p[k])) continue;
        c = detail::circle_three(p[i], p[j], p[k]);
      }
    }
  }
  for (const Point& q : p) c.radius = std::max(c.radius, std::abs(q - c.center));
  return c;
}

enum class ContactKind { Point, Arc };

struct ContactComponent {
  std::size_t first = 0;  ///< first sample index
  std::size_t last = 0;   ///< last sample index (cyclic; may be < first)
  std::size_t count = 0;
  double t_begin = 0.0;
  double t_end = 0.0;
  bool wraps = false;
  ContactKind kind = ContactKind::Point;
  double mean_curvature = 0.0;
};

struct ContactSet {
  std::vector<ContactComponent> components;
  double max_gap = 0.0;              ///< largest angular gap between contact directions
  bool not_in_open_semicircle = true;
};

inline constexpr double kDefaultBandFactor = 1e-5;
inline constexpr double kCurvatureAllowance = 0.02;

namespace detail {

inline double sample_param(const PlanarCurve& c, std::size_t i) {
  return c.param.size() == c.samples.size() ? c.param[i] : c.samples[i].s;
}

}  // namespace detail

/// Maximal cyclic runs of samples within `band` of the circle. A run is an arc
/// when it spans at least two grid steps and its estimated curvature is
/// within 2% of the circle's; tangential point contacts otherwise.
inline ContactSet contact_components(const PlanarCurve& c, const EnclosingCircle& circle, double band = -1.0) {
  require(c.closed, ErrorCode::NotClosed, "contact analysis needs a closed curve");
  if (band <= 0.0) band = kDefaultBandFactor * circle.radius;
  const auto pts = c.vertices();
  const std::size_t m = pts.size();
  std::vector<char> in(m);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < m; ++i) {
    in[i] = circle.radius - std::abs(pts[i] - circle.center) < band;
    hits += in[i] ? 1 : 0;
  }
  if (hits == 0) throw Error(ErrorCode::NoContact, "no sample within the contact band");

  const auto kappa = estimate_curvature_samples(c);
  const double K = 1.0 / circle.radius;
  auto classify = [&](ContactComponent& comp) {
    double sum = 0.0;
    for (std::size_t k = 0; k < comp.count; ++k) sum += kappa[(comp.first + k) % m];
    comp.mean_curvature = sum / static_cast<double>(comp.count);
    const bool long_enough = comp.count >= 3;
    const bool on_circle = std::abs(comp.mean_curvature - K) <= kCurvatureAllowance * K;
    comp.kind = long_enough && on_circle ? ContactKind::Arc : ContactKind::Point;
    comp.t_begin = detail::sample_param(c, comp.first);
    comp.t_end = detail::sample_param(c, comp.last);
    comp.wraps = comp.first + comp.count > m;
  };

  ContactSet out;
  if (hits == m) {
    ContactComponent all;
    all.first = 0;
    all.last = m - 1;
    all.count = m;
    classify(all);
    out.components.push_back(all);
  } else {
    std::size_t start = 0;
    while (!(in[start] && !in[(start + m - 1) % m])) ++start;
    for (std::size_t k = 0; k < m;) {
      const std::size_t i = (start + k) % m;
      if (!in[i]) {
        ++k;
        continue;
      }
      ContactComponent comp;
      comp.first = i;
      while (k < m && in[(start + k) % m]) {
        ++comp.count;
        ++k;
      }
      comp.last = (comp.first + comp.count - 1) % m;
      classify(comp);
      out.components.push_back(comp);
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const ContactComponent& l, const ContactComponent& r) { return l.first < r.first; });
  }

  std::vector<double> dirs;
  for (std::size_t i = 0; i < m; ++i) {
    if (in[i]) dirs.push_back(wrap_two_pi(std::arg(pts[i] - circle.center)));
  }
  std::sort(dirs.begin(), dirs.end());
  double gap = dirs.front() + kTwoPi - dirs.back();
  for (std::size_t i = 1; i < dirs.size(); ++i) gap = std::max(gap, dirs[i] - dirs[i - 1]);
  out.max_gap = gap;
  // The band admits directions up to this angle short of the true contact.
  const double slack = 2.0 * std::sqrt(2.0 * band / circle.radius) + 1e-9;
  out.not_in_open_semicircle = gap <= kPi + slack;
  return out;
}

struct VertexReport {
  std::vector<Extremum> vertices;  ///< cyclic order; kinds alternate
  std::size_t count = 0;
};

namespace detail {

inline VertexReport vertices_from_estimate(const PlanarCurve& c, const std::vector<double>& kappa, double tol) {
  const auto [mn, mx] = std::minmax_element(kappa.begin(), kappa.end());
  const double scaled = tol * std::max({1.0, std::abs(*mn), std::abs(*mx)});
  if (*mx - *mn <= scaled) {
    throw Error(ErrorCode::ConstantCurvature, "curvature is constant: the curve is a circle");
  }
  VertexReport r;
  r.vertices = cyclic_extrema(kappa, scaled, [&](std::size_t i) { return sample_param(c, i); });
  r.count = r.vertices.size();
  return r;
}

}  // namespace detail

/// Local extrema of the estimated curvature, each plateau counted once.
/// `plateau_tol` is relative to max(1, max |kappa|).
inline VertexReport detect_vertices(const PlanarCurve& c, double plateau_tol = kDefaultPlateauTol) {
  require(c.closed, ErrorCode::NotClosed, "vertex detection needs a closed curve");
  return detail::vertices_from_estimate(c, estimate_curvature_samples(c), plateau_tol);
}

struct CurvatureWitness {
  double t = 0.0;
  double curvature = 0.0;
  bool holds = false;
};

struct OssermanReport {
  EnclosingCircle circle;
  ContactSet contacts;
  std::size_t n = 0;
  std::size_t vertex_count = 0;
  std::vector<Extremum> vertices;
  bool excluded_circle = false;  ///< constant curvature; vertices undefined
  bool bound_2n_satisfied = false;
  std::vector<CurvatureWitness> per_component_high_points;  ///< curvature >= K - 2% K
  std::vector<CurvatureWitness> per_gap_low_points;         ///< curvature < K
  std::size_t bonus_vertices = 0;
  bool all_arcs = false;
  bool bonus_bound_satisfied = false;  ///< vertex_count >= 2n + bonus
  bool single_component = false;
  bool four_vertices = false;
};

/// Circumscribed circle, contact components, vertices and the bounds of
/// Osserman's theorem with the bonus clause.
inline OssermanReport osserman_check(const PlanarCurve& c, double band = -1.0,
                                     double plateau_tol = kDefaultPlateauTol, std::uint64_t seed = 0x5eedULL) {
  require(c.closed && detail::is_closed_at(c), ErrorCode::NotClosed, "curve does not close");
  const SimplicityResult simple = is_simple(c);
  if (!simple.simple) {
    throw Error(ErrorCode::NotSimple, "curve crosses itself (segments " + std::to_string(simple.witness->first) +
                                          " and " + std::to_string(simple.witness->second) + ")");
  }
  OssermanReport r;
  const auto pts = c.vertices();
  r.circle = min_enclosing_circle(pts, seed);
  r.contacts = contact_components(c, r.circle, band);
  r.n = r.contacts.components.size();
  const double K = 1.0 / r.circle.radius;
  const auto kappa = estimate_curvature_samples(c);
  const std::size_t m = kappa.size();

  try {
    const VertexReport v = detail::vertices_from_estimate(c, kappa, plateau_tol);
    r.vertices = v.vertices;
    r.vertex_count = v.count;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ConstantCurvature) throw;
    r.excluded_circle = true;
  }

  const auto& comps = r.contacts.components;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& comp = comps[ci];
    std::size_t best = comp.first;
    for (std::size_t k = 0; k < comp.count; ++k) {
      const std::size_t i = (comp.first + k) % m;
      if (kappa[i] > kappa[best]) best = i;
    }
    r.per_component_high_points.push_back(
        {detail::sample_param(c, best), kappa[best], kappa[best] >= K - kCurvatureAllowance * K});

    if (comp.count == m) continue;
    const auto& next = comps[(ci + 1) % comps.size()];
    std::size_t low = (comp.last + 1) % m;
    for (std::size_t i = low; i != next.first; i = (i + 1) % m) {
      if (kappa[i] < kappa[low]) low = i;
    }
    r.per_gap_low_points.push_back({detail::sample_param(c, low), kappa[low], kappa[low] < K});
  }

  r.bound_2n_satisfied = r.vertex_count >= 2 * r.n;
  r.all_arcs = std::all_of(comps.begin(), comps.end(), [](const auto& x) { return x.kind == ContactKind::Arc; });
  r.bonus_vertices = 2 * static_cast<std::size_t>(std::count_if(
                             comps.begin(), comps.end(), [](const auto& x) { return x.kind == ContactKind::Arc; }));
  r.bonus_bound_satisfied = r.vertex_count >= 2 * r.n + r.bonus_vertices;
  r.single_component = r.n == 1;
  r.four_vertices = r.vertex_count >= 4;
  return r;
}

}  // namespace fourvertex
