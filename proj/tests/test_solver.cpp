#include <gtest/gtest.h>

#include <cmath>

#include "fourvertex/bicircle.hpp"
#include "fourvertex/integrator.hpp"
#include "fourvertex/moebius.hpp"
#include "fourvertex/solver.hpp"

using namespace fourvertex;

namespace {

CurvatureProfile kappa0(double a = 0.5, double b = 2.0) { return StepSpec(a, b).profile(); }

CurvatureProfile oval() {
  return CurvatureProfile::from_function([](double t) { return 1.5 + std::cos(2 * t); });
}

CurvatureProfile lopsided() {
  return CurvatureProfile::from_function([](double t) { return 1.5 + std::cos(2 * t) + 0.3 * std::sin(3 * t); });
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

// Checks the output contract of synthesize against the input profile.
void expect_synthesized(const CurvatureProfile& k, const SynthesisResult& r) {
  const auto& c = r.curve;
  EXPECT_TRUE(c.closed);
  EXPECT_TRUE(is_simple(c).simple);
  EXPECT_LT(std::abs(c.samples.back().pos - c.samples.front().pos), 1e-9 * c.length());
  EXPECT_NEAR(std::abs(c.turning()), kTwoPi, 1e-8);
  ASSERT_EQ(c.param.size(), c.samples.size());
  for (double t : c.param) {
    EXPECT_GE(t, 0.0);
    EXPECT_LT(t, kTwoPi);
  }
  EXPECT_GT(r.scale.c, 0.0);
  (void)k;
}

}  // namespace

TEST(ErrorAtBeta, ReferenceBicircleClosesAtZero) {
  const auto ev = error_at_beta(kappa0(), MoebiusParameter());
  EXPECT_LT(ev.error.norm(), 1e-12);
  EXPECT_NEAR(ev.curve.length(), kTwoPi, 1e-12);
  EXPECT_NEAR(ev.curve.turning(), kTwoPi, 1e-12);
}

TEST(ErrorAtBeta, MatchesClosedFormOfPulledBackConfiguration) {
  const auto k = kappa0();
  for (const Complex beta : {Complex(0.2, 0.0), Complex(-0.1, 0.15), Complex(0.05, -0.3)}) {
    const MoebiusParameter m(beta);
    const auto ev = error_at_beta(k, m);
    // Arc-length breakpoints are g_{-beta} of (1, i, -1, -i).
    const auto cfg = moebius_on_config(m.inverse(), base_configuration());
    const double s0 = wrap_two_pi(std::arg(cfg[0]));
    double theta0 = std::nan("");
    for (const auto& smp : ev.curve.samples) {
      if (std::abs(smp.s - s0) < 1e-12) theta0 = smp.theta;
    }
    ASSERT_FALSE(std::isnan(theta0)) << beta;
    // The closed form starts at p1 heading along +x.
    const Complex rotated = unit(-theta0) * ev.error.e;
    EXPECT_LT(std::abs(rotated - closed_form_error(cfg, 0.5, 2.0).e), 1e-9) << beta;
  }
}

TEST(ErrorAtBeta, PullbackPartitionCoversCircle) {
  const auto p = pullback(oval(), CircleDiffeo::identity(), MoebiusParameter(Complex(0.3, 0.2)));
  EXPECT_EQ(p.s.front(), 0.0);
  EXPECT_EQ(p.s.back(), kTwoPi);
  double len = 0.0;
  for (const auto& a : p.arcs) {
    EXPECT_GT(a.length, 0.0);
    len += a.length;
  }
  EXPECT_NEAR(len, kTwoPi, 1e-12);
  EXPECT_EQ(p.t.size(), p.s.size());
}

TEST(Winding, ReferenceLoopWindsOnce) {
  const int w = winding_at_radius(kappa0(), CircleDiffeo::identity(), 0.2);
  EXPECT_EQ(std::abs(w), 1);
}

TEST(Winding, DegreeIndependentOfRadius) {
  for (const auto& k : {kappa0(), kappa0(1.0, 3.0), kappa0(0.2, 0.9)}) {
    const int w0 = winding_at_radius(k, CircleDiffeo::identity(), 0.05);
    EXPECT_EQ(std::abs(w0), 1);
    for (double r : {0.1, 0.2, 0.4}) EXPECT_EQ(winding_at_radius(k, CircleDiffeo::identity(), r), w0) << r;
  }
  const auto k = lopsided();
  const auto ab = find_abab_points(k);
  const auto h1 = build_h1(k, ab, StepSpec(ab.a, ab.b), 0.05);
  const int w0 = winding_at_radius(k, h1, 0.05);
  EXPECT_EQ(std::abs(w0), 1);
  for (double r : {0.1, 0.2, 0.4}) EXPECT_EQ(winding_at_radius(k, h1, r), w0) << r;
}

TEST(FindZeroBeta, ReferenceZeroIsOrigin) {
  ZeroSearchStats st;
  const auto m = find_zero_beta(kappa0(), 0.2, &st);
  EXPECT_LT(std::abs(m.beta), 1e-6);
  EXPECT_LT(st.residual, kZeroResidual);
}

TEST(FindZeroBeta, RotatedReferenceStillClosesNearOrigin) {
  const auto k = compose(kappa0(), CircleDiffeo::rotation(0.1));
  ZeroSearchStats st;
  const auto m = find_zero_beta(k, 0.2, &st);
  EXPECT_LT(st.residual, 1e-9);
  EXPECT_LT(error_at_beta(k, m).error.norm(), 1e-9);
  EXPECT_LT(std::abs(m.beta), 1e-2);
}

TEST(FindZeroBeta, LopsidedProfileHasNonzeroBeta) {
  const auto k = lopsided();
  const auto ab = find_abab_points(k);
  const auto h1 = build_h1(k, ab, StepSpec(ab.a, ab.b), 0.2);
  ZeroSearchStats st;
  const auto m = find_zero_beta(k, h1, 0.2, &st);
  EXPECT_GT(std::abs(m.beta), 1e-4);
  EXPECT_LT(std::abs(error_only(k, h1, m)), 1e-9);
  EXPECT_EQ(std::abs(st.boundary_winding), 1);
}

TEST(FindZeroBeta, NoWindingForOneBump) {
  const auto k = CurvatureProfile::from_function([](double t) { return 1.0 + 0.5 * std::cos(t); });
  EXPECT_EQ(winding_at_radius(k, CircleDiffeo::identity(), 0.2), 0);
  EXPECT_EQ(code_of([&] { find_zero_beta(k, 0.2); }), ErrorCode::NoWindingAtRadius);
}

TEST(FindZeroBeta, ConstantProfileHasNoUsableLoop) {
  // Every Moebius reparametrization of a circle closes, so E is noise.
  EXPECT_THROW(find_zero_beta(CurvatureProfile::constant(1.0), 0.2), Error);
}

TEST(FindZeroBeta, RadiusValidated) {
  EXPECT_EQ(code_of([] { find_zero_beta(kappa0(), 0.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { find_zero_beta(kappa0(), 0.7); }), ErrorCode::InvalidArgument);
}

TEST(FindZeroBeta, PolishDivergedCarriesBestCell) {
  const PolishDiverged e(MoebiusParameter(Complex(0.1, 0.0)), 3e-5);
  EXPECT_EQ(e.code(), ErrorCode::PolishDiverged);
  EXPECT_EQ(e.best().beta, Complex(0.1, 0.0));
  EXPECT_EQ(e.residual(), 3e-5);
}

TEST(FindZeroBeta, ErrorAtZeroShrinksWithEps) {
  const auto k = lopsided();
  const auto ab = find_abab_points(k);
  const StepSpec step(ab.a, ab.b);
  double prev = std::abs(error_only(k, build_h1(k, ab, step, 0.4), MoebiusParameter()));
  for (double eps : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const double e = std::abs(error_only(k, build_h1(k, ab, step, eps), MoebiusParameter()));
    EXPECT_LE(e, 1.1 * prev) << eps;
    prev = e;
  }
}

TEST(Synthesize, Oval) {
  const auto k = oval();
  const auto r = synthesize(k);
  expect_synthesized(k, r);
  EXPECT_FALSE(r.diagnostics.sign_flipped);
  EXPECT_LT(r.diagnostics.final_error, 1e-9 * kTwoPi);
  EXPECT_LT(r.diagnostics.curvature_residual, 0.05 * (r.diagnostics.b - r.diagnostics.a));
  EXPECT_LT(r.diagnostics.sliver_measure, r.eps_used);
  EXPECT_NEAR(r.curve.turning(), kTwoPi, 1e-8);
}

TEST(Synthesize, MixedSign) {
  const auto k = CurvatureProfile::from_function([](double t) { return std::cos(2 * t) + 0.05; });
  const auto r = synthesize(k);
  expect_synthesized(k, r);
  EXPECT_LT(r.diagnostics.curvature_residual, 0.05 * (r.diagnostics.b - r.diagnostics.a));
}

TEST(Synthesize, NegatedOvalRunsClockwise) {
  const auto k = oval().negated();
  const auto r = synthesize(k);
  expect_synthesized(k, r);
  EXPECT_TRUE(r.diagnostics.sign_flipped);
  EXPECT_NEAR(r.curve.turning(), -kTwoPi, 1e-8);
}

TEST(Synthesize, Lopsided) {
  const auto k = lopsided();
  const auto r = synthesize(k);
  expect_synthesized(k, r);
  EXPECT_GT(std::abs(r.beta_star.beta), 0.0);
}

TEST(Synthesize, ConstantGivesCircle) {
  const auto r = synthesize(CurvatureProfile::constant(2.0));
  EXPECT_TRUE(r.curve.closed);
  EXPECT_NEAR(r.curve.length(), kPi, 1e-12);
  EXPECT_NEAR(r.scale.c, 0.5, 0.0);
  for (double v : estimate_curvature_samples(r.curve)) EXPECT_NEAR(v, 2.0, 1e-9);
}

TEST(Synthesize, RejectsTwoVertexProfiles) {
  const auto k = CurvatureProfile::from_function([](double t) { return 1.0 + 0.5 * std::cos(t); });
  EXPECT_EQ(code_of([&] { synthesize(k); }), ErrorCode::HypothesisViolated);
  EXPECT_EQ(code_of([] { synthesize(CurvatureProfile::constant(0.0)); }), ErrorCode::IdenticallyZero);
}

TEST(Synthesize, RoundTripCurvatureMatchesInput) {
  const auto k = oval();
  const auto r = synthesize(k);
  const auto est = estimate_curvature_samples(r.curve);
  // Away from the breakpoint slivers the estimate tracks k(t).
  std::size_t close = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (std::abs(est[i] - k(r.curve.param[i])) < 0.05 * (r.diagnostics.b - r.diagnostics.a)) ++close;
  }
  EXPECT_GT(static_cast<double>(close), 0.95 * static_cast<double>(est.size()));
}

TEST(Compass, EightPanelsWindOnce) {
  int w = 0;
  const auto panels = compass_demo(0.5, 2.0, 0.2, 8, &w);
  ASSERT_EQ(panels.size(), 8u);
  EXPECT_EQ(std::abs(w), 1);
  for (const auto& p : panels) {
    EXPECT_GT(p.error.norm(), 1e-3);
    EXPECT_FALSE(p.curve.closed);
  }
}

TEST(Compass, TinyRadiusAndDenseLoop) {
  int w_small = 0, w_dense = 0;
  const auto small = compass_demo(0.5, 2.0, 1e-4, 8, &w_small);
  compass_demo(0.5, 2.0, 0.2, 256, &w_dense);
  EXPECT_EQ(std::abs(w_small), 1);
  EXPECT_EQ(w_small, w_dense);
  for (const auto& p : small) EXPECT_LT(p.error.norm(), 1e-2);
}

TEST(Compass, ArgumentsValidated) {
  EXPECT_EQ(code_of([] { compass_demo(2.0, 0.5, 0.2, 8); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { compass_demo(0.5, 2.0, 1.0, 8); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { compass_demo(0.5, 2.0, 0.2, 2); }), ErrorCode::InvalidArgument);
}
