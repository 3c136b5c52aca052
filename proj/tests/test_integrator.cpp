#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fourvertex/bicircle.hpp"
#include "fourvertex/fixtures.hpp"
#include "fourvertex/integrator.hpp"

using namespace fourvertex;

TEST(IntegrateCurve, ConstantOneIsUnitCircle) {
  const auto c = integrate_curve(CurvatureProfile::constant(1.0));
  EXPECT_LT(std::abs(c.samples.back().pos), 1e-12);
  EXPECT_NEAR(c.samples.back().theta, kTwoPi, 1e-12);
  EXPECT_TRUE(c.closed);
  // Every sample lies on the circle of radius 1 about i.
  for (const auto& s : c.samples) EXPECT_NEAR(std::abs(s.pos - kI), 1.0, 1e-12);
}

TEST(IntegrateCurve, EqualOppositeArcsClose) {
  const auto step = StepSpec::from_arc_lengths(0.5, 2.0, {2 * kPi / 3, kPi / 3, 2 * kPi / 3, kPi / 3});
  EXPECT_NEAR(step.total(), kTwoPi, 1e-12);
  const auto arcs = step_arcs(step);
  EXPECT_LT(error_vector(integrate_arcs(arcs)).norm(), 1e-12);
}

TEST(IntegrateCurve, UnequalOppositeArcsMissByClosedFormAmount) {
  const auto step = StepSpec::from_arc_lengths(0.5, 2.0, {kPi, kPi / 3, kPi / 3, kPi / 3});
  const double c0 = kTwoPi / step.total();
  auto arcs = step_arcs(step);
  for (auto& a : arcs) a.curvature *= c0;
  const auto e = error_vector(integrate_arcs(arcs));
  EXPECT_GT(e.norm(), 0.1);
  const auto cf = closed_form_error(Configuration::from_angles({0.0, kPi, 4 * kPi / 3, 5 * kPi / 3}), 0.5, 2.0);
  EXPECT_LT(std::abs(e.e - cf.e), 1e-10);
}

TEST(IntegrateCurve, StraightSegmentsBelowThreshold) {
  const std::vector<Arc> arcs{{1.0, 1e-15}, {2.0, 0.0}};
  const auto c = integrate_arcs(arcs);
  EXPECT_EQ(c.samples.back().pos, Point(3.0, 0.0));
  EXPECT_EQ(c.samples.back().theta, 0.0);
}

TEST(IntegrateCurve, TurnsOnceWhenTotalIsTwoPi) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double c1 = u(rng), c2 = u(rng), c3 = u(rng);
    const auto k = CurvatureProfile::from_function(
        [=](double t) { return 1.0 + c1 * std::cos(t) + c2 * std::sin(2 * t) + 0.5 * c3 * std::cos(3 * t); }, 2048);
    const auto kn = normalize_total(k).first;
    const auto c = integrate_curve(kn);
    EXPECT_NEAR(c.samples.back().theta, kTwoPi, 1e-10);
    EXPECT_NEAR(c.samples.back().s, kTwoPi, 0.0);
  }
}

TEST(IntegrateCurve, MatchesClosedFormForPositiveSteps) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 3> g{u(rng), u(rng), u(rng)};
    std::sort(g.begin(), g.end());
    if (g[0] < 1e-3 || g[1] - g[0] < 1e-3 || g[2] - g[1] < 1e-3 || g[2] > 1 - 1e-3) continue;
    const double a = 0.1 + 2 * u(rng);
    const double b = a + 0.05 + 2 * u(rng);
    const Configuration cfg = Configuration::from_angles({0.0, kTwoPi * g[0], kTwoPi * g[1], kTwoPi * g[2]});
    const auto len = cfg.arc_lengths();
    const auto step = StepSpec::from_arc_lengths(a, b, len);
    const double c0 = kTwoPi / step.total();
    auto arcs = step_arcs(step);
    for (auto& arc : arcs) arc.curvature *= c0;
    EXPECT_LT(std::abs(error_vector(integrate_arcs(arcs)).e - closed_form_error(cfg, a, b).e), 1e-10);
  }
}

TEST(ErrorVector, UnitCircleAndHalfCircle) {
  const auto circle = integrate_curve(CurvatureProfile::constant(1.0));
  EXPECT_LT(error_vector(circle).norm(), 1e-12);
  const std::vector<Arc> half{{kPi, 1.0}};
  const auto e = error_vector(integrate_arcs(half, kPi / 512)).e;
  EXPECT_NEAR(e.real(), 0.0, 1e-12);
  EXPECT_NEAR(e.imag(), 2.0, 1e-12);
}

TEST(ErrorVector, LimaconReintegratedFromItsOwnCurvature) {
  const auto c = fixtures::limacon(8192);
  // One arc per sample interval with the mean curvature dtheta / ds.
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i + 1 < c.samples.size(); ++i) {
    const double ds = c.samples[i + 1].s - c.samples[i].s;
    arcs.push_back({ds, (c.samples[i + 1].theta - c.samples[i].theta) / ds});
  }
  const auto re = integrate_arcs(arcs);
  EXPECT_LT(error_vector(re).norm(), 1e-6);
  EXPECT_NEAR(re.turning(), 2 * kTwoPi, 1e-9);
}

TEST(ScaleCurve, CircleDoubledHasHalfCurvature) {
  const auto c = integrate_curve(CurvatureProfile::constant(1.0));
  const auto big = scale_curve(c, ScaleFactor(2.0));
  EXPECT_NEAR(big.length(), 2 * kTwoPi, 1e-12);
  for (double k : estimate_curvature_samples(big)) EXPECT_NEAR(k, 0.5, 1e-6);
  for (double k : estimate_curvature_samples(c)) EXPECT_NEAR(k, 1.0, 1e-6);
}

TEST(ScaleCurve, IdentityAndInversePair) {
  const auto c = fixtures::ellipse(2.0, 1.0, 1024);
  const auto same = scale_curve(c, ScaleFactor(1.0));
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(same.samples[i].pos, c.samples[i].pos);
  const auto back = scale_curve(scale_curve(c, ScaleFactor(3.7)), ScaleFactor(1.0 / 3.7));
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_LT(std::abs(back.samples[i].pos - c.samples[i].pos), 1e-12);
}

TEST(ScaleCurve, CurvatureDividesByFactor) {
  const auto c = fixtures::ellipse(2.0, 1.0, 2048);
  const auto k0 = estimate_curvature_samples(c);
  for (double f : {0.25, 3.0, -1.5}) {
    const auto k1 = estimate_curvature_samples(scale_curve(c, ScaleFactor(f)));
    for (std::size_t i = 0; i < k0.size(); ++i) EXPECT_NEAR(k1[i], k0[i] / std::abs(f), 1e-9);
  }
}

TEST(EstimateCurvature, TooFewSamples) {
  const auto c = fixtures::ellipse(2.0, 1.0, 32);
  try {
    estimate_curvature_samples(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewSamples);
  }
}

TEST(EstimateCurvature, EllipseAgainstClosedForm) {
  const auto c = fixtures::ellipse(2.0, 1.0, 4096);
  const auto k = estimate_curvature_samples(c);
  for (std::size_t i = 0; i < k.size(); ++i) {
    EXPECT_NEAR(k[i], fixtures::ellipse_curvature(2.0, 1.0, c.param[i]), 1e-4);
  }
}

TEST(Convergence, FirstOrderInGridSize) {
  auto f = [](double t) { return 1.0 + 0.6 * std::cos(t) + 0.3 * std::sin(2 * t); };
  const std::size_t ref_n = 1u << 17;
  const auto ref = integrate_curve(CurvatureProfile::from_function(f, ref_n));
  std::vector<double> dist;
  for (std::size_t n : {512u, 1024u, 2048u, 4096u}) {
    const auto c = integrate_curve(CurvatureProfile::from_function(f, n));
    double worst = 0.0;
    const std::size_t stride = ref_n / n;
    for (std::size_t j = 0; j <= n; ++j) worst = std::max(worst, std::abs(c.samples[j].pos - ref.samples[j * stride].pos));
    dist.push_back(worst);
  }
  for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
    const double ratio = dist[i] / dist[i + 1];
    EXPECT_GT(ratio, 1.8) << i;
    EXPECT_LT(ratio, 2.2) << i;
  }
}

TEST(IsSimple, CircleAndBicircleAreSimple) {
  EXPECT_TRUE(is_simple(integrate_curve(CurvatureProfile::constant(1.0))).simple);
  EXPECT_TRUE(is_simple(fixtures::bicircle(0.5, 2.0)).simple);
}

TEST(IsSimple, LimaconCrossesNearOrigin) {
  const auto c = fixtures::limacon(4096);
  const auto r = is_simple(c);
  ASSERT_FALSE(r.simple);
  ASSERT_TRUE(r.witness.has_value());
  const auto pts = c.vertices();
  // Self-crossing of r = -1 - 2 sin(theta) is at the pole.
  EXPECT_LT(std::abs(pts[r.witness->first]), 0.01);
  EXPECT_LT(std::abs(pts[r.witness->second]), 0.01);
}

TEST(IsSimple, PolygonDegenerateContacts) {
  auto poly = [](std::vector<Point> p) { return curve_from_points(p, true); };
  EXPECT_TRUE(is_simple(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}})).simple);
  // Bow tie.
  EXPECT_FALSE(is_simple(poly({{0, 0}, {1, 1}, {1, 0}, {0, 1}})).simple);
  // Vertex touching a non-adjacent edge.
  EXPECT_FALSE(is_simple(poly({{0, 0}, {2, 0}, {2, 2}, {1, 0}, {0, 2}})).simple);
  // Spike folding back on its incoming edge.
  EXPECT_FALSE(is_simple(poly({{0, 0}, {2, 0}, {1, 0}, {1, 1}})).simple);
  // Repeated vertex.
  EXPECT_FALSE(is_simple(poly({{0, 0}, {1, 0}, {1, 1}, {1, 0}, {0, 1}})).simple);
}

TEST(IsSimple, MatchesBruteForceOnRandomPolygons) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point> p(6 + trial % 7);
    for (auto& q : p) q = Point(u(rng), u(rng));
    const auto c = curve_from_points(p, true);
    bool crossing = false;
    const std::size_t m = p.size();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        crossing |= segments_intersect(p[i], p[(i + 1) % m], p[j], p[(j + 1) % m]);
      }
    }
    EXPECT_EQ(is_simple(c).simple, !crossing) << trial;
  }
}

TEST(ReverseCurve, NegatesEstimatedCurvature) {
  const auto c = fixtures::ellipse(2.0, 1.0, 1024);
  const auto r = reverse_curve(c);
  const auto k0 = estimate_curvature_samples(c);
  const auto k1 = estimate_curvature_samples(r);
  const std::size_t m = k0.size();
  for (std::size_t i = 1; i < m; ++i) EXPECT_NEAR(k1[i], -k0[m - i], 1e-9);
  EXPECT_NEAR(r.turning(), -kTwoPi, 1e-12);
}
