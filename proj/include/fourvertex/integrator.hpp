#pragma once

// Arc-length parameterized plane curves built from curvature by exact
// circular-arc stepping, plus the polyline utilities the rest of the library
// leans on: curvature estimation, simplicity testing, scaling, reversal.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fourvertex/curvature.hpp"
#include "fourvertex/error.hpp"
#include "fourvertex/geometry.hpp"

namespace fourvertex {

inline constexpr double kStraightThreshold = 1e-14;
inline constexpr double kClosedTolerance = 1e-9;

struct CurveSample {
  double s = 0.0;
  Point pos{};
  double theta = 0.0;
};

/// Polyline sampled along arc length with a continuous tangent-angle lift.
struct PlanarCurve {
  std::vector<CurveSample> samples;
  bool closed = false;
  ScaleFactor scale{};
  /// Optional: the preassigned-curvature parameter carried by each sample.
  std::vector<double> param;

  std::size_t size() const noexcept { return samples.size(); }
  double length() const { return samples.empty() ? 0.0 : samples.back().s - samples.front().s; }
  double turning() const { return samples.empty() ? 0.0 : samples.back().theta - samples.front().theta; }

  /// Distinct vertices of the polyline; a closed curve drops its repeated endpoint.
  std::vector<Point> vertices() const {
    std::vector<Point> out;
    const std::size_t m = closed && samples.size() > 1 ? samples.size() - 1 : samples.size();
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(samples[i].pos);
    return out;
  }
};

/// A piece of constant curvature.
struct Arc {
  double length = 0.0;
  double curvature = 0.0;
};

struct ErrorVector {
  Complex e{};
  double norm() const { return std::abs(e); }
};

namespace detail {

// (e^{i phi} - 1) / (i phi) without cancellation for small phi.
inline Complex chord_factor(double phi) {
  const double half = 0.5 * phi;
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  return sinc * unit(half);
}

inline bool is_closed_at(const PlanarCurve& c) {
  if (c.samples.size() < 2) return false;
  const double len = c.length();
  return std::abs(c.samples.back().pos - c.samples.front().pos) < kClosedTolerance * std::max(len, 1e-300);
}

}  // namespace detail

/// Integrates a sequence of constant-curvature arcs from the origin heading
/// along +x. Arcs longer than `max_step` are split into equal pieces so the
/// polyline stays fine.
inline PlanarCurve integrate_arcs(std::span<const Arc> arcs,
                                  double max_step = std::numeric_limits<double>::infinity()) {
  PlanarCurve c;
  c.samples.reserve(arcs.size() + 1);
  c.samples.push_back({0.0, Point{}, 0.0});
  double s = 0.0;
  double theta = 0.0;
  Point pos{};
  for (const Arc& arc : arcs) {
    if (!(arc.length > 0.0)) continue;
    std::size_t pieces = 1;
    if (std::isfinite(max_step) && arc.length > max_step) {
      pieces = static_cast<std::size_t>(std::ceil(arc.length / max_step));
    }
    const double ds = arc.length / static_cast<double>(pieces);
    const double k = std::abs(arc.curvature) < kStraightThreshold ? 0.0 : arc.curvature;
    const double phi = k * ds;
    const Complex chord = ds * detail::chord_factor(phi);
    for (std::size_t p = 0; p < pieces; ++p) {
      pos += unit(theta) * chord;
      theta += phi;
      s += ds;
      c.samples.push_back({s, pos, theta});
    }
  }
  c.closed = detail::is_closed_at(c);
  return c;
}

/// Curve of length 2pi whose curvature on [s_j, s_{j+1}) is k(s_j).
inline PlanarCurve integrate_curve(const CurvatureProfile& k) {
  std::vector<Arc> arcs(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) arcs[j] = {k.spacing(), k[j]};
  PlanarCurve c = integrate_arcs(arcs);
  for (std::size_t j = 0; j < c.samples.size(); ++j) c.samples[j].s = k.grid_point(j);
  c.samples.back().s = kTwoPi;
  return c;
}

/// The arcs of a step function read from s = 0.
inline std::vector<Arc> step_arcs(const StepSpec& step) {
  std::vector<Arc> arcs;
  const auto& bp = step.breakpoints;
  if (bp[0] > 0.0) arcs.push_back({bp[0], step.b});
  for (std::size_t i = 0; i < 4; ++i) {
    const double end = (i == 3) ? kTwoPi : bp[i + 1];
    arcs.push_back({end - bp[i], step.value_of_arc(i)});
  }
  return arcs;
}

inline PlanarCurve integrate_curve(const StepSpec& step, std::size_t grid = kDefaultGrid) {
  const auto arcs = step_arcs(step);
  return integrate_arcs(arcs, kTwoPi / static_cast<double>(grid));
}

inline ErrorVector error_vector(const PlanarCurve& c) {
  require(!c.samples.empty(), ErrorCode::InvalidArgument, "empty curve");
  return {c.samples.back().pos - c.samples.front().pos};
}

/// Scales coordinates by f. A negative factor also rotates by pi; the
/// curvature of the result is the original divided by |f|.
inline PlanarCurve scale_curve(const PlanarCurve& c, ScaleFactor f) {
  PlanarCurve out = c;
  const double m = std::abs(f.c);
  for (auto& smp : out.samples) {
    smp.pos *= f.c;
    smp.s *= m;
    if (f.c < 0.0) smp.theta += kPi;
  }
  out.scale = ScaleFactor(c.scale.c * f.c);
  return out;
}

/// Same point set traversed backwards; signed curvature changes sign.
inline PlanarCurve reverse_curve(const PlanarCurve& c) {
  PlanarCurve out;
  out.closed = c.closed;
  out.scale = c.scale;
  const std::size_t n = c.samples.size();
  if (n == 0) return out;
  const double len = c.samples.back().s;
  const double s0 = c.samples.front().s;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& src = c.samples[n - 1 - i];
    out.samples[i] = {s0 + (len - src.s), src.pos, src.theta + kPi};
  }
  const double shift = kTwoPi * std::round(out.samples.front().theta / kTwoPi);
  for (auto& smp : out.samples) smp.theta -= shift;
  if (!c.param.empty()) out.param.assign(c.param.rbegin(), c.param.rend());
  return out;
}

/// Polyline through the given points. Tangent angles bisect adjacent segment
/// directions, arc length is cumulative chord length.
inline PlanarCurve curve_from_points(std::span<const Point> pts, bool closed) {
  require(pts.size() >= 3, ErrorCode::TooFewSamples, "need at least three points");
  const std::size_t m = pts.size();
  const std::size_t segs = closed ? m : m - 1;
  std::vector<double> dir(segs);
  for (std::size_t i = 0; i < segs; ++i) dir[i] = std::arg(pts[(i + 1) % m] - pts[i]);
  for (std::size_t i = 1; i < segs; ++i) dir[i] = dir[i - 1] + wrap_pi(dir[i] - dir[i - 1]);

  PlanarCurve c;
  c.closed = closed;
  const std::size_t count = closed ? m + 1 : m;
  c.samples.resize(count);
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t pi = i % m;
    if (i > 0) s += std::abs(pts[pi] - pts[(i - 1) % m]);
    double theta;
    if (!closed) {
      theta = (i == 0) ? dir[0] : (i == m - 1) ? dir[segs - 1] : 0.5 * (dir[i - 1] + dir[i]);
    } else {
      const double total = dir[segs - 1] + wrap_pi(dir[0] - dir[segs - 1]) - dir[0];
      const double incoming = (i == 0) ? dir[segs - 1] - total : dir[i - 1];
      const double outgoing = (i == segs) ? dir[0] + total : dir[i];
      theta = 0.5 * (incoming + outgoing);
    }
    c.samples[i] = {s, pts[pi], theta};
  }
  return c;
}

namespace detail {

// Gauss-Legendre nodes and weights on [-1, 1], 8 points.
inline constexpr double kGaussX[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                      -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                      0.7966664774136267,  0.9602898564975363};
inline constexpr double kGaussW[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                      0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                      0.2223810344533745, 0.1012285362903763};

}  // namespace detail

/// Closed curve sampled at n uniform parameter values from a position map and
/// its derivative; arc length by Gauss-Legendre quadrature of the speed and
/// tangent angles from the exact derivative.
template <typename Pos, typename Vel>
PlanarCurve curve_from_parametric(Pos&& pos, Vel&& vel, std::size_t n) {
  require(n >= 8, ErrorCode::TooFewSamples, "need at least 8 samples");
  PlanarCurve c;
  c.samples.resize(n + 1);
  const double h = kTwoPi / static_cast<double>(n);
  double s = 0.0;
  double theta = std::arg(vel(0.0));
  double prev_arg = theta;
  for (std::size_t j = 0; j <= n; ++j) {
    const double t = h * static_cast<double>(j);
    if (j > 0) {
      double seg = 0.0;
      for (int g = 0; g < 8; ++g) {
        seg += detail::kGaussW[g] * std::abs(vel(t - 0.5 * h + 0.5 * h * detail::kGaussX[g]));
      }
      s += 0.5 * h * seg;
      const double a = std::arg(vel(t));
      theta += wrap_pi(a - prev_arg);
      prev_arg = a;
    }
    c.samples[j] = {s, j == n ? pos(0.0) : pos(t), theta};
  }
  c.closed = true;
  c.param.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) c.param[j] = h * static_cast<double>(j);
  return c;
}

/// dtheta/ds by central differences at each distinct sample; cyclic when the
/// curve is closed, one-sided at the ends otherwise.
inline std::vector<double> estimate_curvature_samples(const PlanarCurve& c) {
  require(c.samples.size() >= 64, ErrorCode::TooFewSamples, "curvature estimation needs >= 64 samples");
  const auto& sm = c.samples;
  const std::size_t n = sm.size();
  std::vector<double> out;
  if (c.closed) {
    const std::size_t m = n - 1;
    const double len = sm.back().s - sm.front().s;
    const double turn = sm.back().theta - sm.front().theta;
    out.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double s_prev = (i == 0) ? sm[m - 1].s - len : sm[i - 1].s;
      const double t_prev = (i == 0) ? sm[m - 1].theta - turn : sm[i - 1].theta;
      out[i] = (sm[i + 1].theta - t_prev) / (sm[i + 1].s - s_prev);
    }
  } else {
    out.resize(n);
    out[0] = (sm[1].theta - sm[0].theta) / (sm[1].s - sm[0].s);
    out[n - 1] = (sm[n - 1].theta - sm[n - 2].theta) / (sm[n - 1].s - sm[n - 2].s);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      out[i] = (sm[i + 1].theta - sm[i - 1].theta) / (sm[i + 1].s - sm[i - 1].s);
    }
  }
  return out;
}

/// Estimated curvature as a profile indexed by sample (grid point j is
/// sample j). For uniformly sampled curves this is the arc-length grid.
inline CurvatureProfile estimate_curvature(const PlanarCurve& c) {
  return CurvatureProfile(estimate_curvature_samples(c), Interp::Linear);
}

struct SimplicityResult {
  bool simple = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  ///< intersecting segment indices
};

/// Exact self-intersection test of the closed polyline. Segment i joins
/// vertex i to vertex i + 1 (cyclically). Adjacent segments may only share
/// their common endpoint.
inline SimplicityResult is_simple(const PlanarCurve& c) {
  const auto pts = c.vertices();
  const std::size_t m = pts.size();
  SimplicityResult res;
  if (m < 3) return res;
  auto seg_a = [&](std::size_t i) { return pts[i]; };
  auto seg_b = [&](std::size_t i) { return pts[(i + 1) % m]; };

  // Folding back onto the previous segment.
  for (std::size_t i = 0; i < m; ++i) {
    const Point p = pts[i], q = pts[(i + 1) % m], r = pts[(i + 2) % m];
    if (orientation(p, q, r) == 0 && dot(q - p, r - q) < 0.0) {
      res.simple = false;
      res.witness = std::pair{i, (i + 1) % m};
      return res;
    }
  }

  struct Box {
    double xmin, xmax, ymin, ymax;
  };
  std::vector<Box> box(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Point a = seg_a(i), b = seg_b(i);
    box[i] = {std::min(a.real(), b.real()), std::max(a.real(), b.real()), std::min(a.imag(), b.imag()),
              std::max(a.imag(), b.imag())};
  }
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return box[l].xmin < box[r].xmin || (box[l].xmin == box[r].xmin && l < r);
  });

  auto adjacent = [&](std::size_t i, std::size_t j) {
    return (i + 1) % m == j || (j + 1) % m == i;
  };

  // Sweep a vertical line left to right; `active` holds segments whose x-range
  // still reaches the sweep position.
  std::vector<std::size_t> active;
  std::optional<std::pair<std::size_t, std::size_t>> hit;
  for (std::size_t idx : order) {
    const Box& bi = box[idx];
    std::size_t keep = 0;
    for (std::size_t a : active) {
      if (box[a].xmax >= bi.xmin) active[keep++] = a;
    }
    active.resize(keep);
    for (std::size_t a : active) {
      if (adjacent(a, idx)) continue;
      if (box[a].ymax < bi.ymin || bi.ymax < box[a].ymin) continue;
      if (segments_intersect(seg_a(a), seg_b(a), seg_a(idx), seg_b(idx))) {
        const std::pair<std::size_t, std::size_t> w{std::min(a, idx), std::max(a, idx)};
        if (!hit || w < *hit) hit = w;
      }
    }
    if (hit) break;
    active.push_back(idx);
  }
  if (hit) {
    res.simple = false;
    res.witness = hit;
  }
  return res;
}

}  // namespace fourvertex
