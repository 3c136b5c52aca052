#pragma once

// Curvature functions on the circle: sampled profiles, two-valued step
// functions, orientation-preserving circle diffeomorphisms, extrema, and the
// preprocessing that turns a profile with two maxima and two minima into a
// function that is close in measure to an a, b, a, b step function.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fourvertex/error.hpp"
#include "fourvertex/geometry.hpp"

namespace fourvertex {

enum class Interp { Step, Linear };

inline constexpr std::size_t kDefaultGrid = 4096;
inline constexpr double kDefaultPlateauTol = 1e-9;

/// Periodic real function on [0, 2pi) sampled at t_j = 2 pi j / N.
class CurvatureProfile {
 public:
  CurvatureProfile(std::vector<double> samples, Interp interp)
      : samples_(std::move(samples)), interp_(interp) {
    require(samples_.size() >= 8, ErrorCode::InvalidArgument, "profile needs at least 8 samples");
    for (double v : samples_) {
      require(std::isfinite(v), ErrorCode::InvalidArgument, "profile samples must be finite");
    }
  }

  template <typename F>
  static CurvatureProfile from_function(F&& f, std::size_t n = kDefaultGrid,
                                        Interp interp = Interp::Linear) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    return CurvatureProfile(std::move(v), interp);
  }

  static CurvatureProfile constant(double value, std::size_t n = kDefaultGrid) {
    return CurvatureProfile(std::vector<double>(n, value), Interp::Linear);
  }

  std::size_t size() const noexcept { return samples_.size(); }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(samples_.size()); }
  double grid_point(std::size_t j) const noexcept {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(samples_.size());
  }
  Interp interp() const noexcept { return interp_; }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t j) const noexcept { return samples_[j]; }

  double operator()(double t) const {
    const double n = static_cast<double>(samples_.size());
    double x = wrap_two_pi(t) / kTwoPi * n;
    // Grid points come back as j +- a few ulps; land them on the sample.
    if (const double r = std::round(x); std::abs(x - r) < 1e-9) x = r == n ? 0.0 : r;
    auto j = static_cast<std::size_t>(std::floor(x));
    if (j >= samples_.size()) j = samples_.size() - 1;
    if (interp_ == Interp::Step) return samples_[j];
    const double frac = x - static_cast<double>(j);
    const double next = samples_[(j + 1) % samples_.size()];
    return samples_[j] + frac * (next - samples_[j]);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : samples_) m = std::max(m, std::abs(v));
    return m;
  }

  CurvatureProfile scaled(double c) const {
    std::vector<double> v(samples_);
    for (double& x : v) x *= c;
    return CurvatureProfile(std::move(v), interp_);
  }

  CurvatureProfile negated() const { return scaled(-1.0); }

  /// Same function resampled onto an m-point grid.
  CurvatureProfile resampled(std::size_t m) const {
    if (m == samples_.size()) return *this;
    std::vector<double> v(m);
    for (std::size_t j = 0; j < m; ++j) {
      v[j] = (*this)(kTwoPi * static_cast<double>(j) / static_cast<double>(m));
    }
    return CurvatureProfile(std::move(v), interp_);
  }

 private:
  std::vector<double> samples_;
  Interp interp_;
};

struct ScaleFactor {
  double c = 1.0;

  ScaleFactor() = default;
  explicit ScaleFactor(double value) : c(value) {
    require(std::isfinite(value) && value != 0.0, ErrorCode::InvalidArgument,
            "scale factor must be finite and nonzero");
  }
};

/// Two-valued step function: a on [p0, p1), b on [p1, p2), a on [p2, p3),
/// b on [p3, p0 + 2pi).
struct StepSpec {
  double a = 0.5;
  double b = 2.0;
  std::array<double, 4> breakpoints{0.0, kPi / 2, kPi, 3 * kPi / 2};

  StepSpec() = default;
  StepSpec(double a_, double b_, std::array<double, 4> bp = {0.0, kPi / 2, kPi, 3 * kPi / 2})
      : a(a_), b(b_), breakpoints(bp) {
    validate();
  }

  /// Breakpoints 0, L1, L1 + L2, L1 + L2 + L3 for arcs of the given lengths.
  static StepSpec from_arc_lengths(double a, double b, std::array<double, 4> lengths) {
    const double total = lengths[0] + lengths[1] + lengths[2] + lengths[3];
    require(std::abs(total - kTwoPi) < 1e-9, ErrorCode::InvalidArgument,
            "arc lengths must sum to 2pi");
    return StepSpec(a, b, {0.0, lengths[0], lengths[0] + lengths[1], lengths[0] + lengths[1] + lengths[2]});
  }

  void validate() const {
    require(a > 0.0 && b > a, ErrorCode::InvalidArgument, "step values need 0 < a < b");
    for (std::size_t i = 0; i < 4; ++i) {
      require(breakpoints[i] >= 0.0 && breakpoints[i] < kTwoPi, ErrorCode::InvalidArgument,
              "breakpoints must lie in [0, 2pi)");
      if (i > 0) {
        require(breakpoints[i] > breakpoints[i - 1], ErrorCode::InvalidArgument,
                "breakpoints must be strictly increasing");
      }
    }
  }

  double value_of_arc(std::size_t i) const { return (i % 2 == 0) ? a : b; }

  double arc_length(std::size_t i) const {
    const double end = (i == 3) ? breakpoints[0] + kTwoPi : breakpoints[i + 1];
    return end - breakpoints[i];
  }

  double operator()(double t) const {
    double x = wrap_two_pi(t);
    if (x < breakpoints[0]) x += kTwoPi;
    for (std::size_t i = 3; i > 0; --i) {
      if (x >= breakpoints[i]) return value_of_arc(i);
    }
    return a;
  }

  double total() const {
    return a * (arc_length(0) + arc_length(2)) + b * (arc_length(1) + arc_length(3));
  }

  /// Piecewise-constant profile on an n-point grid (exact when breakpoints
  /// fall on grid points).
  CurvatureProfile profile(std::size_t n = kDefaultGrid) const {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = (*this)(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    return CurvatureProfile(std::move(v), Interp::Step);
  }
};

/// Orientation-preserving circle diffeomorphism given by a piecewise-linear
/// lift through knots (x_i, y_i). Both knot sequences are strictly increasing
/// and span exactly one period.
class CircleDiffeo {
 public:
  CircleDiffeo(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    require(x_.size() >= 2 && x_.size() == y_.size(), ErrorCode::InvalidArgument,
            "diffeomorphism needs matching knot arrays of size >= 2");
    for (std::size_t i = 1; i < x_.size(); ++i) {
      require(x_[i] > x_[i - 1] && y_[i] > y_[i - 1], ErrorCode::InvalidArgument,
              "diffeomorphism lift must be strictly increasing");
    }
    require(std::abs(x_.back() - x_.front() - kTwoPi) < 1e-9 &&
                std::abs(y_.back() - y_.front() - kTwoPi) < 1e-9,
            ErrorCode::InvalidArgument, "diffeomorphism lift must have degree one");
    x_.back() = x_.front() + kTwoPi;
    y_.back() = y_.front() + kTwoPi;
  }

  static CircleDiffeo identity() { return CircleDiffeo({0.0, kTwoPi}, {0.0, kTwoPi}); }

  static CircleDiffeo rotation(double angle) {
    return CircleDiffeo({0.0, kTwoPi}, {angle, angle + kTwoPi});
  }

  /// Samples a monotone lift f on [0, 2pi] at m + 1 uniform points.
  template <typename F>
  static CircleDiffeo sample(F&& lift, std::size_t m) {
    std::vector<double> x(m + 1), y(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
      x[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
      y[j] = lift(x[j]);
    }
    y[m] = y[0] + kTwoPi;
    return CircleDiffeo(std::move(x), std::move(y));
  }

  double operator()(double t) const {
    const double turns = std::floor((t - x_.front()) / kTwoPi);
    double u = t - turns * kTwoPi;
    u = std::clamp(u, x_.front(), x_.back());
    auto it = std::upper_bound(x_.begin(), x_.end(), u);
    std::size_t i = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    const double w = (u - x_[i]) / (x_[i + 1] - x_[i]);
    return y_[i] + w * (y_[i + 1] - y_[i]) + turns * kTwoPi;
  }

  CircleDiffeo inverse() const { return CircleDiffeo(y_, x_); }

  /// (this o other)(t) = this(other(t)), sampled at the union of knots.
  CircleDiffeo after(const CircleDiffeo& other) const {
    std::vector<double> xs(other.x_);
    const CircleDiffeo oinv = other.inverse();
    for (double k : x_) {
      // Knots of `this` pulled back into other's domain period.
      double u = oinv(k);
      const double turns = std::floor((u - other.x_.front()) / kTwoPi);
      u -= turns * kTwoPi;
      if (u > other.x_.front() && u < other.x_.back()) xs.push_back(u);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> x, y;
    for (double u : xs) {
      if (!x.empty() && u - x.back() < 1e-14) continue;
      x.push_back(u);
      y.push_back((*this)(other(u)));
    }
    x.back() = x.front() + kTwoPi;
    y.back() = y.front() + kTwoPi;
    return CircleDiffeo(std::move(x), std::move(y));
  }

  std::span<const double> knots_x() const noexcept { return x_; }
  std::span<const double> knots_y() const noexcept { return y_; }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

inline double total_curvature(const CurvatureProfile& k) {
  // Both the step rule and the periodic trapezoid rule reduce to h * sum.
  double sum = 0.0;
  for (double v : k.samples()) sum += v;
  return sum * k.spacing();
}

inline double zero_total_threshold(const CurvatureProfile& k) { return 1e-8 * k.max_abs() * kTwoPi; }

inline std::pair<CurvatureProfile, ScaleFactor> normalize_total(const CurvatureProfile& k) {
  const double total = total_curvature(k);
  if (!(std::abs(total) >= zero_total_threshold(k)) || total == 0.0) {
    throw Error(ErrorCode::ZeroTotalCurvature, "total curvature is (numerically) zero");
  }
  const ScaleFactor c(kTwoPi / total);
  return {k.scaled(c.c), c};
}

/// Pointwise k(d(t)), resampled on k's grid.
inline CurvatureProfile compose(const CurvatureProfile& k, const CircleDiffeo& d) {
  std::vector<double> v(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) v[j] = k(d(k.grid_point(j)));
  return CurvatureProfile(std::move(v), k.interp());
}

inline std::pair<CurvatureProfile, CircleDiffeo> make_integral_nonzero(const CurvatureProfile& k) {
  require(k.max_abs() > 1e-300, ErrorCode::IdenticallyZero, "curvature is identically zero");
  if (std::abs(total_curvature(k)) >= zero_total_threshold(k)) return {k, CircleDiffeo::identity()};

  // Inverse lift with density 3 where k > 0 and 1 elsewhere; composing with its
  // inverse reweights the integral towards the positive part.
  const std::size_t n = k.size();
  std::vector<double> x(n + 1), y(n + 1);
  x[0] = 0.0;
  y[0] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = (k[j] > 0.0) ? 3.0 : 1.0;
    x[j + 1] = k.grid_point(j + 1 == n ? 0 : j + 1) + (j + 1 == n ? kTwoPi : 0.0);
    y[j + 1] = y[j] + w * k.spacing();
  }
  const double scale = kTwoPi / y[n];
  for (double& v : y) v *= scale;
  y[n] = kTwoPi;
  const CircleDiffeo d = CircleDiffeo(std::move(x), std::move(y)).inverse();
  CurvatureProfile kd = compose(k, d);
  if (std::abs(total_curvature(kd)) < zero_total_threshold(kd)) {
    throw Error(ErrorCode::ConstructionFailed, "reweighting left the integral at zero");
  }
  return {std::move(kd), d};
}

enum class ExtremumKind { Max, Min };

/// A maximal plateau of a cyclic sequence that is a strict local extremum of
/// the plateau-collapsed sequence.
struct Extremum {
  std::size_t first = 0;  ///< first sample index of the plateau
  std::size_t last = 0;   ///< last sample index (cyclic; may be < first)
  double t_begin = 0.0;
  double t_end = 0.0;
  ExtremumKind kind = ExtremumKind::Max;
  double value = 0.0;
};

namespace detail {

struct Plateau {
  std::size_t first;
  std::size_t count;
  double lo;
  double hi;
  double rep() const { return 0.5 * (lo + hi); }
};

inline std::vector<Plateau> cyclic_plateaus(std::span<const double> v, double tol) {
  const std::size_t n = v.size();
  if (n == 0) return {};
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  if (*mx - *mn <= tol) return {Plateau{0, n, *mn, *mx}};

  // Start right after the largest jump so that the first run is not cut.
  std::size_t start = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(v[i] - v[(i + n - 1) % n]);
    if (d > best) {
      best = d;
      start = i;
    }
  }
  std::vector<Plateau> runs;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (start + k) % n;
    if (!runs.empty() && std::abs(v[i] - v[runs.back().first]) <= tol) {
      auto& r = runs.back();
      ++r.count;
      r.lo = std::min(r.lo, v[i]);
      r.hi = std::max(r.hi, v[i]);
    } else {
      runs.push_back(Plateau{i, 1, v[i], v[i]});
    }
  }
  if (runs.size() > 1 && std::abs(v[runs.back().first] - v[runs.front().first]) <= tol) {
    auto& r = runs.back();
    r.count += runs.front().count;
    r.lo = std::min(r.lo, runs.front().lo);
    r.hi = std::max(r.hi, runs.front().hi);
    runs.erase(runs.begin());
  }
  return runs;
}

}  // namespace detail

/// Extrema of a cyclic sequence; `param(i)` maps sample indices to parameters.
template <typename Param>
std::vector<Extremum> cyclic_extrema(std::span<const double> v, double plateau_tol, Param&& param) {
  const auto runs = detail::cyclic_plateaus(v, plateau_tol);
  std::vector<Extremum> out;
  const std::size_t m = runs.size();
  if (m < 2) return out;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double prev = runs[(i + m - 1) % m].rep();
    const double next = runs[(i + 1) % m].rep();
    const double cur = runs[i].rep();
    std::optional<ExtremumKind> kind;
    if (cur > prev && cur > next) kind = ExtremumKind::Max;
    if (cur < prev && cur < next) kind = ExtremumKind::Min;
    if (!kind) continue;
    Extremum e;
    e.first = runs[i].first;
    e.last = (runs[i].first + runs[i].count - 1) % n;
    e.t_begin = param(e.first);
    e.t_end = param(e.last);
    e.kind = *kind;
    e.value = (*kind == ExtremumKind::Max) ? runs[i].hi : runs[i].lo;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const Extremum& l, const Extremum& r) { return l.first < r.first; });
  return out;
}

inline std::vector<Extremum> local_extrema(const CurvatureProfile& k,
                                           double plateau_tol = kDefaultPlateauTol) {
  return cyclic_extrema(k.samples(), plateau_tol, [&](std::size_t i) { return k.grid_point(i); });
}

/// Levels 0 < a < b attained as a, b, a, b at four cyclically ordered
/// parameters by the profile, or by its negative when `sign_flipped`.
struct AbabPoints {
  double a = 0.0;
  double b = 0.0;
  std::array<double, 4> params{};
  bool sign_flipped = false;
};

namespace detail {

struct Window {
  double min_b = 0.0;  // smaller of the two maxima
  double max_a = 0.0;  // larger of the two minima
  std::array<std::size_t, 4> idx{};  // extremum indices: max, min, max, min in cyclic order
  bool valid = false;
  double rule_a() const { return max_a + (min_b - max_a) / 10.0; }
  double positive_width() const { return min_b - std::max(max_a, 0.0); }
};

inline Window best_window(const std::vector<Extremum>& ex) {
  Window best;
  const std::size_t m = ex.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (ex[i].kind != ExtremumKind::Max) continue;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (ex[j].kind != ExtremumKind::Max) continue;
      // lowest minimum strictly inside each of the two arcs between the maxima
      std::optional<std::size_t> lo1, lo2;
      for (std::size_t k = i + 1; k < j; ++k) {
        if (ex[k].kind == ExtremumKind::Min && (!lo1 || ex[k].value < ex[*lo1].value)) lo1 = k;
      }
      for (std::size_t k = j + 1; k < i + m; ++k) {
        const std::size_t kk = k % m;
        if (ex[kk].kind == ExtremumKind::Min && (!lo2 || ex[kk].value < ex[*lo2].value)) lo2 = kk;
      }
      if (!lo1 || !lo2) continue;
      Window w;
      w.min_b = std::min(ex[i].value, ex[j].value);
      w.max_a = std::max(ex[*lo1].value, ex[*lo2].value);
      if (w.min_b <= w.max_a) continue;
      w.idx = {i, *lo1, j, *lo2};
      w.valid = true;
      const bool better = !best.valid || w.positive_width() > best.positive_width() ||
                          (w.positive_width() == best.positive_width() &&
                           w.min_b - w.max_a > best.min_b - best.max_a);
      if (better) best = w;
    }
  }
  return best;
}

inline std::size_t forward_distance(std::size_t from, std::size_t to, std::size_t n) {
  return (to + n - from) % n;
}

}  // namespace detail

inline AbabPoints find_abab_points(const CurvatureProfile& k, double plateau_tol = kDefaultPlateauTol) {
  const auto ex_pos = local_extrema(k, plateau_tol);
  std::size_t maxima = 0, minima = 0;
  for (const auto& e : ex_pos) (e.kind == ExtremumKind::Max ? maxima : minima)++;
  if (maxima < 2 || minima < 2) {
    throw Error(ErrorCode::HypothesisViolated,
                "curvature needs at least two local maxima and two local minima (found " +
                    std::to_string(maxima) + " and " + std::to_string(minima) + ")");
  }
  const CurvatureProfile neg = k.negated();
  const auto ex_neg = local_extrema(neg, plateau_tol);
  const detail::Window w_pos = detail::best_window(ex_pos);
  const detail::Window w_neg = detail::best_window(ex_neg);

  bool flip = false;
  if (w_pos.valid && w_pos.rule_a() > 0.0) {
    flip = false;
  } else if (w_neg.valid && w_neg.rule_a() > 0.0) {
    flip = true;
  } else {
    const double wp = w_pos.valid ? w_pos.positive_width() : -1.0;
    const double wn = w_neg.valid ? w_neg.positive_width() : -1.0;
    if (wp <= 0.0 && wn <= 0.0) {
      throw Error(ErrorCode::NoPositiveWindow, "neither kappa nor -kappa admits levels 0 < a < b");
    }
    flip = wn > wp;
  }

  const CurvatureProfile& eff = flip ? neg : k;
  const auto& ex = flip ? ex_neg : ex_pos;
  const detail::Window& w = flip ? w_neg : w_pos;
  const double lo = std::max(w.max_a, 0.0);
  const double delta = (w.min_b - lo) / 10.0;

  AbabPoints out;
  out.sign_flipped = flip;
  out.a = lo + delta;
  out.b = w.min_b - delta;

  const std::size_t n = eff.size();
  const auto& max1 = ex[w.idx[0]];
  const auto& min1 = ex[w.idx[1]];
  const auto& max2 = ex[w.idx[2]];
  const auto& min2 = ex[w.idx[3]];

  // Walk upwards from a minimum plateau to the next maximum plateau and return
  // the first crossings of a and then b. Linear profiles give exact crossings;
  // step profiles give the jump location.
  auto climb = [&](const Extremum& low, const Extremum& high) -> std::array<double, 2> {
    const std::size_t span = detail::forward_distance(low.last, high.first, n) + 1;
    const double h = eff.spacing();
    const double start = eff.grid_point(low.last);
    std::optional<double> ta;
    auto crossing = [&](double v0, double v1, double t0, double level) -> std::optional<double> {
      if (v0 == level) return t0;
      if (!(v0 < level && v1 >= level)) return std::nullopt;
      if (eff.interp() == Interp::Step) return t0 + h;
      return t0 + h * (level - v0) / (v1 - v0);
    };
    for (std::size_t c = 0; c < span; ++c) {
      const std::size_t j = (low.last + c) % n;
      const double v0 = eff[j];
      const double v1 = eff[(j + 1) % n];
      const double t0 = start + static_cast<double>(c) * h;
      if (!ta) ta = crossing(v0, v1, t0, out.a);
      if (!ta) continue;
      if (auto tb = crossing(v0, v1, t0, out.b); tb && *tb >= *ta) {
        return {wrap_two_pi(*ta), wrap_two_pi(*tb)};
      }
    }
    throw Error(ErrorCode::ConstructionFailed, "level crossing not found");
  };
  const auto first = climb(min1, max2);
  const auto second = climb(min2, max1);
  out.params = {first[0], first[1], second[0], second[1]};
  return out;
}

/// Orders the abab parameters cyclically starting from params[0].
inline std::array<double, 4> unwrap_cyclic(const std::array<double, 4>& p) {
  std::array<double, 4> u = p;
  for (std::size_t i = 1; i < 4; ++i) {
    while (u[i] <= u[i - 1]) u[i] += kTwoPi;
  }
  return u;
}

/// Fraction of [0, 2pi) (as a measure) on which |k(h(t)) - step(t)| > eps,
/// evaluated on an m-point grid.
inline double measure_of_disagreement(const CurvatureProfile& k, const CircleDiffeo& h,
                                      const StepSpec& step, double eps, std::size_t m) {
  std::size_t bad = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double t = kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
    if (std::abs(k(h(t)) - step(t)) > eps) ++bad;
  }
  return kTwoPi * static_cast<double>(bad) / static_cast<double>(m);
}

/// Sliver intervals of h1's domain (each of u-length eps/8, centred on the
/// step breakpoints), as [begin, end] pairs that may extend past 2pi.
inline std::array<std::pair<double, double>, 4> sliver_intervals(const StepSpec& step, double eps) {
  std::array<std::pair<double, double>, 4> out{};
  const double half = eps / 16.0;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = {step.breakpoints[i] - half, step.breakpoints[i] + half};
  }
  return out;
}

/// Preliminary diffeomorphism h1 with k o h1 (or -k o h1 when the levels came
/// from the negated profile) eps-close in measure to `step`. The core of each
/// quarter arc is mapped onto a neighbourhood of the matching abab parameter
/// where the profile stays within eps/2 of the step value; the four slivers of
/// length eps/8 around the breakpoints absorb the rest of the circle.
inline CircleDiffeo build_h1(const CurvatureProfile& k, const AbabPoints& abab, const StepSpec& step,
                             double eps) {
  require(eps > 0.0 && std::isfinite(eps), ErrorCode::InvalidArgument, "eps must be positive");
  require(std::abs(step.a - abab.a) <= 1e-12 * std::max(1.0, std::abs(abab.a)) &&
              std::abs(step.b - abab.b) <= 1e-12 * std::max(1.0, std::abs(abab.b)),
          ErrorCode::InvalidArgument, "step values must match the abab levels");
  step.validate();
  const double sliver = eps / 8.0;
  for (std::size_t i = 0; i < 4; ++i) {
    require(step.arc_length(i) > 2.0 * sliver, ErrorCode::InvalidArgument, "eps too large for the step arcs");
  }

  const CurvatureProfile eff = abab.sign_flipped ? k.negated() : k;
  const auto tau = unwrap_cyclic(abab.params);
  std::array<double, 4> gap_after{};
  for (std::size_t i = 0; i < 4; ++i) {
    gap_after[i] = (i == 3 ? tau[0] + kTwoPi : tau[i + 1]) - tau[i];
  }
  const double probe = eff.spacing() / 8.0;
  const std::size_t check_grid = std::max<std::size_t>(16384, 4 * eff.size());

  double reach = 0.45;
  for (int attempt = 0; attempt < 40; ++attempt, reach *= 0.5) {
    std::array<double, 4> left{}, right{};
    bool degenerate = false;
    for (std::size_t i = 0; i < 4; ++i) {
      const double level = step.value_of_arc(i);
      const double gap_before = gap_after[(i + 3) % 4];
      const double max_left = reach * gap_before;
      const double max_right = reach * gap_after[i];
      auto extent = [&](double dir, double limit) {
        double w = 0.0;
        while (w + probe <= limit && std::abs(eff(tau[i] + dir * (w + probe)) - level) <= 0.5 * eps) w += probe;
        return w;
      };
      const double wl = extent(-1.0, max_left);
      const double wr = extent(1.0, max_right);
      if (wl + wr <= 0.0) degenerate = true;
      left[i] = tau[i] - wl;
      right[i] = tau[i] + wr;
      if (wl + wr <= 0.0) right[i] = left[i] + 1e-12;
    }
    if (degenerate) continue;

    const auto& bp = step.breakpoints;
    const double hs = sliver / 2.0;
    std::vector<double> x, y;
    for (std::size_t i = 0; i < 4; ++i) {
      const double end = (i == 3) ? bp[0] + kTwoPi : bp[i + 1];
      x.push_back(bp[i] + hs);
      y.push_back(left[i]);
      x.push_back(end - hs);
      y.push_back(right[i]);
    }
    x.push_back(bp[0] + hs + kTwoPi);
    y.push_back(left[0] + kTwoPi);
    CircleDiffeo h1(std::move(x), std::move(y));
    if (measure_of_disagreement(eff, h1, step, eps, check_grid) < eps) return h1;
  }
  throw Error(ErrorCode::ConstructionFailed, "could not build h1 satisfying the measure bound");
}

}  // namespace fourvertex
