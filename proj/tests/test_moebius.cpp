#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "fourvertex/bicircle.hpp"
#include "fourvertex/moebius.hpp"

using namespace fourvertex;

namespace {

Configuration random_config(std::mt19937_64& rng, double min_gap = 2e-2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::array<double, 3> g{u(rng), u(rng), u(rng)};
    std::sort(g.begin(), g.end());
    if (g[0] < min_gap || g[1] - g[0] < min_gap || g[2] - g[1] < min_gap || 1.0 - g[2] < min_gap) continue;
    const double r = kTwoPi * u(rng);
    return Configuration::from_angles({r, r + kTwoPi * g[0], r + kTwoPi * g[1], r + kTwoPi * g[2]});
  }
}

Complex random_beta(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return rmax * std::sqrt(u(rng)) * unit(kTwoPi * u(rng));
}

// Hyperbolic line with ideal ends p, q as a Euclidean circle orthogonal to the
// unit circle. Returns nullopt for (nearly) antipodal ends, where it is a diameter.
std::optional<std::pair<Complex, double>> orthogonal_circle(Complex p, Complex q) {
  const double denom = 1.0 + dot(p, q);
  if (denom < 1e-6) return std::nullopt;
  const Complex c = (p + q) / denom;
  return std::pair{c, std::sqrt(std::norm(c) - 1.0)};
}

// Intersection inside the disk of the geodesics p1p3 and p2p4.
std::optional<Complex> geodesic_crossing(const Configuration& q) {
  const auto g1 = orthogonal_circle(q[0], q[2]);
  const auto g2 = orthogonal_circle(q[1], q[3]);
  if (!g1 || !g2) return std::nullopt;
  const auto [c1, r1] = *g1;
  const auto [c2, r2] = *g2;
  const double d = std::abs(c2 - c1);
  const double along = (d * d + r1 * r1 - r2 * r2) / (2 * d);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - along * along));
  const Complex e = (c2 - c1) / d;
  const Complex base = c1 + along * e;
  const Complex x1 = base + h * kI * e, x2 = base - h * kI * e;
  return std::abs(x1) < std::abs(x2) ? x1 : x2;
}

}  // namespace

TEST(Moebius, ParameterMustLieInDisk) {
  EXPECT_THROW(MoebiusParameter(Complex(1.0, 0.0)), Error);
  EXPECT_THROW(MoebiusParameter(Complex(0.8, 0.8)), Error);
  EXPECT_NO_THROW(MoebiusParameter(Complex(0.5, 0.5)));
}

TEST(Moebius, ApplyExamples) {
  EXPECT_EQ(moebius_apply(MoebiusParameter(), Complex(0.3, 0.4)), Complex(0.3, 0.4));
  const MoebiusParameter m(Complex(0.5, 0.0));
  EXPECT_LT(std::abs(moebius_apply(m, Complex(0.5, 0.0))), 1e-16);
  EXPECT_LT(std::abs(moebius_apply(m, 1.0) - 1.0), 1e-15);
  EXPECT_LT(std::abs(moebius_apply(m, -1.0) + 1.0), 1e-15);
  // (i - 1/2) / (1 - i/2) = (-4 + 3i) / 5.
  EXPECT_LT(std::abs(moebius_apply(m, kI) - Complex(-0.8, 0.6)), 1e-15);
}

TEST(Moebius, PreservesUnitCircle) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    const MoebiusParameter m(random_beta(rng, 0.95));
    EXPECT_NEAR(std::abs(moebius_apply(m, unit(u(rng)))), 1.0, 1e-14);
  }
}

TEST(Moebius, InverseParameterUndoes) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const MoebiusParameter m(random_beta(rng, 0.9));
    const Complex z = random_beta(rng, 0.99);
    EXPECT_LT(std::abs(moebius_apply(m.inverse(), moebius_apply(m, z)) - z), 1e-12);
  }
}

TEST(Moebius, OnConfigKeepsCounterclockwiseOrder) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto c = random_config(rng);
    const MoebiusParameter m(random_beta(rng, 0.9));
    EXPECT_NO_THROW(moebius_on_config(m, c));
  }
}

TEST(Moebius, LiftIntertwinesWithApply) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const MoebiusParameter m(random_beta(rng, 0.95));
    const double t = u(rng);
    EXPECT_LT(std::abs(unit(moebius_lift(m, t)) - moebius_apply(m, unit(t))), 1e-13);
    // Degree one: the lift gains exactly 2pi over a period.
    EXPECT_NEAR(moebius_lift(m, t + kTwoPi) - moebius_lift(m, t), kTwoPi, 1e-12);
  }
}

TEST(Moebius, LiftOfInverseIsInverseLift) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const MoebiusParameter m(random_beta(rng, 0.8));
    const double t = u(rng);
    EXPECT_NEAR(moebius_lift(m.inverse(), moebius_lift(m, t)), t, 1e-12);
  }
}

TEST(Moebius, CircleDiffeoFollowsLift) {
  const MoebiusParameter m(Complex(0.3, -0.4));
  const auto d = to_circle_diffeo(m, 1 << 14);
  for (int j = 0; j < 100; ++j) {
    const double t = kTwoPi * (j + 0.37) / 100.0;
    const double diff = d(t) - moebius_lift(m, t);
    EXPECT_NEAR(diff - kTwoPi * std::round(diff / kTwoPi), 0.0, 1e-6);
  }
}

TEST(EvaluationInverse, CoreConfigurationHasZeroBeta) {
  const auto pre = evaluation_inverse(base_configuration());
  EXPECT_LT(std::abs(pre.m.beta), 1e-15);
  const auto rotated = Configuration::from_angles({0.3, 1.1, 0.3 + kPi, 1.1 + kPi});
  EXPECT_LT(std::abs(evaluation_inverse(rotated).m.beta), 1e-15);
}

TEST(EvaluationInverse, KnownBeta) {
  const MoebiusParameter m(Complex(0.25, 0.1));
  const auto q = moebius_on_config(m, base_configuration());
  const auto pre = evaluation_inverse(q);
  EXPECT_LT(std::abs(pre.m.beta - m.beta), 1e-14);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_LT(std::abs(pre.core_point[j] - base_configuration()[j]), 1e-14);
}

TEST(EvaluationInverse, AgreesWithOrthogonalCircleConstruction) {
  std::mt19937_64 rng(6);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto q = random_config(rng);
    const auto x = geodesic_crossing(q);
    if (!x) continue;
    const auto pre = evaluation_inverse(q);
    EXPECT_LT(std::abs(pre.m.beta + *x), 1e-9 * std::max(1.0, 1.0 / (1.0 - std::abs(*x))));
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(EvaluationInverse, RoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto q = random_config(rng);
    const auto pre = evaluation_inverse(q);
    EXPECT_TRUE(is_core(pre.core_point, 1e-9));
    const auto back = moebius_on_config(pre.m, pre.core_point);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_LT(std::abs(back[j] - q[j]), 1e-9);
  }
}

TEST(EvaluationInverse, InvertsEvaluationOnGrid) {
  // Every (core point, beta) with |beta| <= 0.9 is recovered from its image.
  for (double x : {0.05, 0.15, 0.25, 0.35, 0.45}) {
    const auto core = from_reduced(unit(0.7 * x), ReducedConfigCoords(x, 0.5, x + 0.5));
    for (int i = -9; i <= 9; ++i) {
      for (int j = -9; j <= 9; ++j) {
        const Complex beta(0.1 * i, 0.1 * j);
        if (std::abs(beta) > 0.9 + 1e-12) continue;
        const MoebiusParameter m(beta);
        const auto pre = evaluation_inverse(moebius_on_config(m, core));
        EXPECT_LT(std::abs(pre.m.beta - beta), 1e-9) << x << " " << beta;
        for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(std::abs(pre.core_point[k] - core[k]), 1e-9);
      }
    }
  }
}

TEST(EvaluationInverse, NearBoundaryPointsCluster) {
  // As |beta| -> 1 everything away from beta / |beta| is pushed toward one
  // point, so the image has at most two clusters.
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const MoebiusParameter m((1.0 - 1e-3) * unit(u(rng)));
    const auto q = moebius_on_config(m, base_configuration());
    std::vector<Complex> centres;
    for (std::size_t j = 0; j < 4; ++j) {
      const bool near = std::any_of(centres.begin(), centres.end(), [&](Complex c) { return std::abs(c - q[j]) < 0.1; });
      if (!near) centres.push_back(q[j]);
    }
    EXPECT_LE(centres.size(), 2u);
  }
}
