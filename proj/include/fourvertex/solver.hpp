#pragma once

// Synthesis of a simple closed curve with preassigned curvature.
//
// Step 1 picks levels 0 < a < b attained as a, b, a, b and a diffeomorphism
// h1 making k o h1 close in measure to the step function kappa0. Step 2 looks
// for beta in the Moebius disk where the curve with curvature
// c * k o h1 o g_beta (total curvature 2pi) closes, using winding numbers of
// the error vector around cells of a quadtree in the beta-plane.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fourvertex/bicircle.hpp"
#include "fourvertex/curvature.hpp"
#include "fourvertex/error.hpp"
#include "fourvertex/geometry.hpp"
#include "fourvertex/integrator.hpp"
#include "fourvertex/moebius.hpp"
#include "fourvertex/winding.hpp"

namespace fourvertex {

/// Piecewise-constant curvature over a non-uniform partition of the arc
/// length circle [0, 2pi], with the preassigned parameter t at every
/// partition point.
struct PulledBackProfile {
  std::vector<Arc> arcs;        ///< unnormalized curvature k(t) on each piece
  std::vector<double> s;        ///< partition points, s.front() = 0, s.back() = 2pi
  std::vector<double> t;        ///< t = h1(g_beta(s)) wrapped into [0, 2pi)
  double total = 0.0;           ///< integral of the curvature over [0, 2pi]
};

/// Pulls k back through s -> u = g_beta(s) -> t = h1(u). The partition holds
/// a uniform grid in s, every cell boundary of k, and every kink of h1, so a
/// step profile stays exactly piecewise constant.
inline PulledBackProfile pullback(const CurvatureProfile& k, const CircleDiffeo& h1, const MoebiusParameter& m) {
  const std::size_t n = k.size();
  const MoebiusParameter back = m.inverse();
  const CircleDiffeo h1_inv = h1.inverse();

  std::vector<double> cuts;
  cuts.reserve(2 * n + 16);
  for (std::size_t j = 0; j <= n; ++j) cuts.push_back(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  auto add_u = [&](double u) { cuts.push_back(wrap_two_pi(moebius_lift(back, u))); };
  for (std::size_t j = 0; j < n; ++j) add_u(h1_inv(k.grid_point(j)));
  for (double u : h1.knots_x()) add_u(u);
  std::sort(cuts.begin(), cuts.end());

  PulledBackProfile out;
  out.s.reserve(cuts.size());
  for (double c : cuts) {
    if (!out.s.empty() && c - out.s.back() < 1e-13) continue;
    out.s.push_back(c);
  }
  if (kTwoPi - out.s.back() < 1e-13) out.s.back() = kTwoPi;
  else out.s.push_back(kTwoPi);

  auto t_of = [&](double s) { return h1(moebius_lift(m, s)); };
  out.arcs.resize(out.s.size() - 1);
  out.t.resize(out.s.size());
  for (std::size_t i = 0; i + 1 < out.s.size(); ++i) {
    const double len = out.s[i + 1] - out.s[i];
    const double kv = k(t_of(0.5 * (out.s[i] + out.s[i + 1])));
    out.arcs[i] = {len, kv};
    out.total += len * kv;
  }
  for (std::size_t i = 0; i < out.s.size(); ++i) out.t[i] = wrap_two_pi(t_of(out.s[i]));
  return out;
}

namespace detail {

inline Complex arcs_error(const std::vector<Arc>& arcs, double scale) {
  Complex pos{};
  double theta = 0.0;
  for (const Arc& a : arcs) {
    const double k = scale * a.curvature;
    const double phi = (std::abs(k) < kStraightThreshold ? 0.0 : k) * a.length;
    pos += unit(theta) * (a.length * chord_factor(phi));
    theta += phi;
  }
  return pos;
}

inline double normalizing_scale(const PulledBackProfile& p) {
  require(std::abs(p.total) > 1e-12, ErrorCode::ZeroTotalCurvature, "composed curvature integrates to zero");
  return kTwoPi / p.total;
}

}  // namespace detail

struct BetaEvaluation {
  ErrorVector error;
  PlanarCurve curve;  ///< length 2pi, total curvature 2pi, param = t per sample
  ScaleFactor scale;  ///< c with curvature c * k o h1 o g_beta
};

inline Complex error_only(const CurvatureProfile& k, const CircleDiffeo& h1, const MoebiusParameter& m) {
  const PulledBackProfile p = pullback(k, h1, m);
  return detail::arcs_error(p.arcs, detail::normalizing_scale(p));
}

inline BetaEvaluation error_at_beta(const CurvatureProfile& k, const CircleDiffeo& h1, const MoebiusParameter& m) {
  PulledBackProfile p = pullback(k, h1, m);
  const ScaleFactor c(detail::normalizing_scale(p));
  for (Arc& a : p.arcs) a.curvature *= c.c;
  PlanarCurve curve = integrate_arcs(p.arcs);
  curve.param = p.t;
  curve.samples.back().s = kTwoPi;
  const ErrorVector e = error_vector(curve);
  return {e, std::move(curve), c};
}

/// k1 is taken as already composed with h1.
inline BetaEvaluation error_at_beta(const CurvatureProfile& k1, const MoebiusParameter& m) {
  return error_at_beta(k1, CircleDiffeo::identity(), m);
}

/// Error vectors around the circle |beta| = r, sampled at `samples` points.
inline std::vector<Complex> error_loop(const CurvatureProfile& k, const CircleDiffeo& h1, double r,
                                       std::size_t samples) {
  std::vector<Complex> loop(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double phi = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
    loop[i] = error_only(k, h1, MoebiusParameter(std::polar(r, phi)));
  }
  return loop;
}

/// Winding of the error loop over |beta| = r, doubling the sampling until the
/// density contract holds.
inline int winding_at_radius(const CurvatureProfile& k, const CircleDiffeo& h1, double r,
                             std::size_t samples = 64) {
  for (; samples <= 4096; samples *= 2) {
    try {
      return winding_number(error_loop(k, h1, r, samples));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientDensity) throw;
    }
  }
  throw Error(ErrorCode::InsufficientDensity, "error loop too irregular to count windings");
}

/// Raised when the secant polish does not reach the residual target; carries
/// the best quadtree cell centre.
class PolishDiverged : public Error {
 public:
  PolishDiverged(MoebiusParameter best, double residual)
      : Error(ErrorCode::PolishDiverged, "secant polish did not converge (residual " + std::to_string(residual) + ")"),
        best_(best),
        residual_(residual) {}
  MoebiusParameter best() const { return best_; }
  double residual() const { return residual_; }

 private:
  MoebiusParameter best_;
  double residual_;
};

struct ZeroSearchStats {
  int boundary_winding = 0;
  int levels = 0;
  int evaluations = 0;
  int polish_iterations = 0;
  double residual = 0.0;
};

namespace detail {

class BetaSearch {
 public:
  BetaSearch(const CurvatureProfile& k, const CircleDiffeo& h1) : k_(k), h1_(h1) {}

  Complex eval(Complex beta) {
    const auto key = std::pair{beta.real(), beta.imag()};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Complex e = error_only(k_, h1_, MoebiusParameter(beta));
    ++evaluations_;
    cache_.emplace(key, e);
    return e;
  }

  // Winding of E around the axis-aligned square [lo, hi]; nullopt when E
  // (numerically) vanishes on, or sits too close to, the boundary.
  std::optional<int> cell_winding(Complex lo, Complex hi) {
    const std::array<Complex, 4> corners{lo, Complex(hi.real(), lo.imag()), hi, Complex(lo.real(), hi.imag())};
    std::vector<Complex> loop;
    for (std::size_t e = 0; e < 4; ++e) {
      if (!append_edge(corners[e], corners[(e + 1) % 4], loop)) return std::nullopt;
    }
    return winding_number(loop);
  }

  int evaluations() const { return evaluations_; }

 private:
  const CurvatureProfile& k_;
  const CircleDiffeo& h1_;
  std::map<std::pair<double, double>, Complex> cache_;
  int evaluations_ = 0;

  // Samples the edge [p, q) and bisects wherever consecutive error vectors
  // turn by pi/4 or more.
  bool append_edge(Complex p, Complex q, std::vector<Complex>& loop) {
    struct Node {
      double t;
      Complex v;
    };
    std::vector<Node> pts;
    for (int i = 0; i <= 4; ++i) {
      const double t = i / 4.0;
      pts.push_back({t, eval(p + (q - p) * t)});
    }
    for (std::size_t i = 0; i + 1 < pts.size();) {
      if (std::abs(pts[i].v) < 1e-12) return false;
      if (std::abs(std::arg(pts[i + 1].v / pts[i].v)) < kPi / 4) {
        ++i;
        continue;
      }
      const double t = 0.5 * (pts[i].t + pts[i + 1].t);
      if (pts[i + 1].t - pts[i].t < 1e-9) return false;
      pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(i) + 1, Node{t, eval(p + (q - p) * t)});
    }
    if (std::abs(pts.back().v) < 1e-12) return false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) loop.push_back(pts[i].v);
    return true;
  }
};

}  // namespace detail

inline constexpr double kZeroResidual = 1e-9;

/// beta* with |E(beta*)| < 1e-9 and |beta*| <= r0. Quadtree over
/// [-r0, r0]^2 keeping cells with nonzero boundary winding, down to diameter
/// 1e-6, then a Broyden secant polish.
inline MoebiusParameter find_zero_beta(const CurvatureProfile& k, const CircleDiffeo& h1, double r0,
                                       ZeroSearchStats* stats = nullptr) {
  require(r0 > 0.0 && r0 < 0.7, ErrorCode::InvalidArgument, "r0 must lie in (0, 0.7)");
  ZeroSearchStats st;
  st.boundary_winding = winding_at_radius(k, h1, r0);
  if (st.boundary_winding == 0) {
    throw Error(ErrorCode::NoWindingAtRadius, "error loop has winding 0 at radius " + std::to_string(r0));
  }

  detail::BetaSearch search(k, h1);
  Complex lo(-r0, -r0), hi(r0, r0);
  auto w = search.cell_winding(lo, hi);
  if (w && *w == 0) {
    const double q = r0 / std::sqrt(2.0);
    lo = Complex(-q, -q);
    hi = Complex(q, q);
    w = search.cell_winding(lo, hi);
  }
  if (!w) throw Error(ErrorCode::InsufficientDensity, "error map vanishes near the search square");
  if (*w == 0) throw Error(ErrorCode::NoWindingAtRadius, "no winding around the search square");

  auto dist_to_origin = [](Complex a, Complex b) {
    const double x = std::clamp(0.0, a.real(), b.real());
    const double y = std::clamp(0.0, a.imag(), b.imag());
    return std::abs(Complex(x, y));
  };

  while (std::abs(hi - lo) >= 1e-6) {
    if (std::abs(search.eval(0.5 * (lo + hi))) < 1e-12) break;
    ++st.levels;
    std::optional<std::pair<Complex, Complex>> chosen;
    double chosen_dist = 0.0;
    for (double jitter = 0.0; jitter < 1e-9 && !chosen; jitter = (jitter == 0.0 ? 1e-12 : jitter * 10.0)) {
      const Complex mid = 0.5 * (lo + hi) + Complex(jitter, jitter);
      const std::array<std::pair<Complex, Complex>, 4> kids{
          std::pair{lo, mid}, std::pair{Complex(mid.real(), lo.imag()), Complex(hi.real(), mid.imag())},
          std::pair{mid, hi}, std::pair{Complex(lo.real(), mid.imag()), Complex(mid.real(), hi.imag())}};
      bool touched = false;
      for (const auto& [a, b] : kids) {
        const double d = dist_to_origin(a, b);
        if (d > r0) continue;  // outside the disk
        const auto kw = search.cell_winding(a, b);
        if (!kw) {
          touched = true;
          break;
        }
        if (*kw != 0 && (!chosen || d < chosen_dist)) {
          chosen = std::pair{a, b};
          chosen_dist = d;
        }
      }
      if (touched) chosen.reset();
    }
    if (!chosen) break;  // zero sits on a shared edge: polish from here
    lo = chosen->first;
    hi = chosen->second;
  }

  // Broyden polish, initial Jacobian by finite differences.
  Complex beta = 0.5 * (lo + hi);
  Complex e = search.eval(beta);
  const double fd = 1e-7;
  const Complex ex = (search.eval(beta + fd) - e) / fd;
  const Complex ey = (search.eval(beta + Complex(0.0, fd)) - e) / fd;
  std::array<double, 4> jac{ex.real(), ey.real(), ex.imag(), ey.imag()};
  Complex best = beta;
  double best_res = std::abs(e);
  for (int it = 0; it < 60 && best_res >= 1e-13; ++it) {
    st.polish_iterations = it + 1;
    const double det = jac[0] * jac[3] - jac[1] * jac[2];
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = -(jac[3] * e.real() - jac[1] * e.imag()) / det;
    const double dy = -(-jac[2] * e.real() + jac[0] * e.imag()) / det;
    Complex next = beta + Complex(dx, dy);
    if (std::abs(next) >= 1.0) break;
    const Complex en = search.eval(next);
    const Complex df = en - e;
    const double step2 = dx * dx + dy * dy;
    if (step2 == 0.0) break;
    // J += (df - J s) s^T / (s^T s)
    const double rx = df.real() - (jac[0] * dx + jac[1] * dy);
    const double ry = df.imag() - (jac[2] * dx + jac[3] * dy);
    jac[0] += rx * dx / step2;
    jac[1] += rx * dy / step2;
    jac[2] += ry * dx / step2;
    jac[3] += ry * dy / step2;
    beta = next;
    e = en;
    if (std::abs(e) < best_res) {
      best_res = std::abs(e);
      best = beta;
    }
  }
  st.evaluations = search.evaluations();
  st.residual = best_res;
  if (stats) *stats = st;
  if (best_res >= kZeroResidual || std::abs(best) > r0) {
    throw PolishDiverged(MoebiusParameter(0.5 * (lo + hi)), best_res);
  }
  return MoebiusParameter(best);
}

inline MoebiusParameter find_zero_beta(const CurvatureProfile& k1, double r0, ZeroSearchStats* stats = nullptr) {
  return find_zero_beta(k1, CircleDiffeo::identity(), r0, stats);
}

struct SynthesisOptions {
  double eps0 = 0.1;
  double r0 = 0.2;
  int max_rounds = 20;
  double plateau_tol = kDefaultPlateauTol;
};

struct SynthesisDiagnostics {
  double final_error = 0.0;       ///< |E| of the unscaled curve at beta*
  double c1_position = 0.0;       ///< sup distance to the reference bicircle
  double c1_theta = 0.0;          ///< sup tangent-angle distance to the reference bicircle
  double curvature_residual = 0.0;  ///< sup |estimated - preassigned| outside slivers
  double sliver_measure = 0.0;    ///< arc-length measure excluded from the residual
  double a = 0.0;
  double b = 0.0;
  bool sign_flipped = false;
  int winding = 0;
  int rounds = 0;
  int quadtree_levels = 0;
  int evaluations = 0;
  int polish_iterations = 0;
  double r0_used = 0.0;
  std::string last_failure;
};

struct SynthesisResult {
  PlanarCurve curve;  ///< closed, simple; param holds the preassigned parameter t per sample
  MoebiusParameter beta_star;
  CircleDiffeo h1 = CircleDiffeo::identity();
  ScaleFactor scale;
  double eps_used = 0.0;
  SynthesisDiagnostics diagnostics;
};

/// Position and tangent angle at arbitrary arc length along a chain of arcs
/// starting at the origin heading along +x.
class ArcChain {
 public:
  explicit ArcChain(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
    double s = 0.0, th = 0.0;
    Point p{};
    for (const Arc& a : arcs_) {
      start_s_.push_back(s);
      start_pos_.push_back(p);
      start_theta_.push_back(th);
      const double phi = a.curvature * a.length;
      p += unit(th) * (a.length * detail::chord_factor(phi));
      th += phi;
      s += a.length;
    }
    end_s_ = s;
  }

  std::pair<Point, double> at(double s) const {
    s = std::clamp(s, 0.0, end_s_);
    auto it = std::upper_bound(start_s_.begin(), start_s_.end(), s);
    const std::size_t i = it == start_s_.begin() ? 0 : static_cast<std::size_t>(it - start_s_.begin()) - 1;
    const double ds = s - start_s_[i];
    const double phi = arcs_[i].curvature * ds;
    return {start_pos_[i] + unit(start_theta_[i]) * (ds * detail::chord_factor(phi)), start_theta_[i] + phi};
  }

 private:
  std::vector<Arc> arcs_;
  std::vector<double> start_s_;
  std::vector<Point> start_pos_;
  std::vector<double> start_theta_;
  double end_s_ = 0.0;
};

inline std::pair<double, double> c1_distance(const PlanarCurve& c, const ArcChain& reference) {
  double dp = 0.0, dt = 0.0;
  for (const auto& smp : c.samples) {
    const auto [p, th] = reference.at(smp.s);
    dp = std::max(dp, std::abs(smp.pos - p));
    dt = std::max(dt, std::abs(smp.theta - th));
  }
  return {dp, dt};
}

namespace detail {

inline bool is_constant(const CurvatureProfile& k, double tol) {
  const auto [mn, mx] = std::minmax_element(k.samples().begin(), k.samples().end());
  return *mx - *mn <= tol * std::max(1.0, std::abs(*mx));
}

inline SynthesisResult circle_result(const CurvatureProfile& k) {
  const double kv = k[0];
  require(kv != 0.0, ErrorCode::IdenticallyZero, "curvature is identically zero");
  const std::size_t n = k.size();
  const std::vector<Arc> arcs(n, Arc{kTwoPi / static_cast<double>(n), kv > 0 ? 1.0 : -1.0});
  PlanarCurve unit_circle = integrate_arcs(arcs);
  unit_circle.param.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) unit_circle.param[j] = wrap_two_pi(k.grid_point(j));
  unit_circle.closed = true;
  SynthesisResult r;
  r.scale = ScaleFactor(1.0 / std::abs(kv));
  r.curve = scale_curve(unit_circle, r.scale);
  r.curve.closed = true;
  r.diagnostics.final_error = std::abs(error_vector(unit_circle).e);
  return r;
}

// Arc-length intervals that h1's slivers occupy after pulling back through g_beta.
inline std::vector<std::pair<double, double>> sliver_s_intervals(const StepSpec& step, double eps,
                                                                 const MoebiusParameter& m) {
  std::vector<std::pair<double, double>> out;
  const MoebiusParameter back = m.inverse();
  for (const auto& [u0, u1] : sliver_intervals(step, eps)) {
    const double s0 = moebius_lift(back, u0);
    const double s1 = moebius_lift(back, u1);
    const double w0 = wrap_two_pi(s0);
    const double w1 = w0 + (s1 - s0);
    out.emplace_back(w0, w1);
  }
  return out;
}

inline bool in_intervals(double s, const std::vector<std::pair<double, double>>& iv) {
  for (const auto& [a, b] : iv) {
    if ((s >= a && s <= b) || (s + kTwoPi >= a && s + kTwoPi <= b)) return true;
  }
  return false;
}

}  // namespace detail

/// Simple closed curve whose curvature at the sample with parameter t is k(t).
inline SynthesisResult synthesize(const CurvatureProfile& k, const SynthesisOptions& opt = {}) {
  if (detail::is_constant(k, opt.plateau_tol)) return detail::circle_result(k);

  const AbabPoints abab = find_abab_points(k, opt.plateau_tol);
  const CurvatureProfile eff = abab.sign_flipped ? k.negated() : k;
  const StepSpec step(abab.a, abab.b);
  const double c0 = kTwoPi / step.total();
  std::vector<Arc> ref_arcs = step_arcs(step);
  for (Arc& a : ref_arcs) a.curvature *= c0;
  const ArcChain reference(ref_arcs);
  const double tol_curv = 0.05 * (abab.b - abab.a);

  SynthesisDiagnostics diag;
  diag.a = abab.a;
  diag.b = abab.b;
  diag.sign_flipped = abab.sign_flipped;
  double eps = opt.eps0;
  double r0 = opt.r0;

  for (int round = 0; round < opt.max_rounds; ++round) {
    diag.rounds = round + 1;
    diag.r0_used = r0;
    std::optional<CircleDiffeo> h1;
    try {
      h1 = build_h1(k, abab, step, eps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ConstructionFailed && e.code() != ErrorCode::InvalidArgument) throw;
      diag.last_failure = e.what();
      eps *= 0.5;
      continue;
    }

    ZeroSearchStats zs;
    MoebiusParameter beta;
    try {
      beta = find_zero_beta(eff, *h1, r0, &zs);
    } catch (const Error& e) {
      diag.last_failure = e.what();
      if (e.code() == ErrorCode::NoWindingAtRadius) {
        eps *= 0.5;
      } else if (e.code() == ErrorCode::PolishDiverged || e.code() == ErrorCode::InsufficientDensity) {
        eps *= 0.5;
        r0 *= 0.5;
      } else {
        throw;
      }
      continue;
    }
    diag.winding = zs.boundary_winding;
    diag.quadtree_levels = zs.levels;
    diag.evaluations = zs.evaluations;
    diag.polish_iterations = zs.polish_iterations;

    BetaEvaluation ev = error_at_beta(eff, *h1, beta);
    diag.final_error = ev.error.norm();
    const auto [dp, dt] = c1_distance(ev.curve, reference);
    diag.c1_position = dp;
    diag.c1_theta = dt;
    ev.curve.closed = ev.error.norm() < kClosedTolerance * kTwoPi;
    if (!ev.curve.closed) {
      diag.last_failure = "curve did not close";
      eps *= 0.5;
      continue;
    }
    const SimplicityResult simple = is_simple(ev.curve);
    if (!simple.simple || dp >= 0.1 || dt >= 0.1) {
      diag.last_failure = !simple.simple ? "curve not simple" : "curve not C1-close to the bicircle";
      eps *= 0.5;
      r0 *= 0.5;
      continue;
    }

    PlanarCurve curve = scale_curve(ev.curve, ev.scale);
    if (abab.sign_flipped) curve = reverse_curve(curve);

    const auto slivers = detail::sliver_s_intervals(step, eps, beta);
    diag.sliver_measure = 0.0;
    for (const auto& [a0, a1] : slivers) diag.sliver_measure += a1 - a0;
    const auto est = estimate_curvature_samples(curve);
    double worst = 0.0;
    const std::size_t m = est.size();
    for (std::size_t i = 0; i < m; ++i) {
      // Sliver intervals live in the unscaled, unreversed arc length.
      const std::size_t src = abab.sign_flipped ? (curve.samples.size() - 1 - i) : i;
      if (detail::in_intervals(ev.curve.samples[src].s, slivers)) continue;
      worst = std::max(worst, std::abs(est[i] - k(curve.param[i])));
    }
    diag.curvature_residual = worst;
    if (worst >= tol_curv || diag.sliver_measure >= eps) {
      diag.last_failure = "curvature round trip outside tolerance";
      eps *= 0.5;
      continue;
    }

    SynthesisResult r;
    r.curve = std::move(curve);
    r.curve.closed = true;
    r.beta_star = beta;
    r.h1 = *h1;
    r.scale = ev.scale;
    r.eps_used = eps;
    r.diagnostics = diag;
    return r;
  }
  std::ostringstream msg;
  msg << "no closed simple curve after " << diag.rounds << " rounds (last failure: " << diag.last_failure
      << ", |E| = " << diag.final_error << ", C1 = " << diag.c1_position << "/" << diag.c1_theta << ")";
  throw Error(ErrorCode::SynthesisFailed, msg.str());
}

struct CompassPanel {
  MoebiusParameter beta;
  PlanarCurve curve;
  ErrorVector error;
};

/// Open curves for kappa0 o g_beta at beta = r e^{2 pi i j / n}. Their error
/// vectors wind once around the origin.
inline std::vector<CompassPanel> compass_demo(double a, double b, double r, std::size_t n,
                                              int* winding = nullptr, std::size_t grid = kDefaultGrid) {
  require(0.0 < a && a < b, ErrorCode::InvalidArgument, "need 0 < a < b");
  require(0.0 < r && r < 1.0, ErrorCode::InvalidArgument, "need 0 < r < 1");
  require(n >= 3, ErrorCode::InvalidArgument, "need at least 3 panels");
  const CurvatureProfile kappa0 = StepSpec(a, b).profile(grid);
  std::vector<CompassPanel> out;
  std::vector<Complex> loop;
  for (std::size_t j = 0; j < n; ++j) {
    const MoebiusParameter m(std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
    BetaEvaluation ev = error_at_beta(kappa0, m);
    loop.push_back(ev.error.e);
    out.push_back({m, std::move(ev.curve), ev.error});
  }
  const int w = winding_number(loop);
  require(std::abs(w) == 1, ErrorCode::ConstructionFailed, "compass loop does not wind once");
  if (winding) *winding = w;
  return out;
}

}  // namespace fourvertex
