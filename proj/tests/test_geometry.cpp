#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fourvertex/geometry.hpp"
#include "fourvertex/winding.hpp"

using namespace fourvertex;

TEST(Orientation, SignsOfSimpleTriangles) {
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(orientation({0, 0}, {0, 1}, {1, 0}), -1);
  EXPECT_EQ(orientation({0, 0}, {1, 1}, {2, 2}), 0);
}

TEST(Orientation, ExactOnNearlyCollinearPoints) {
  // Points on y = x perturbed by one ulp: a naive cross product rounds to zero
  // or the wrong sign for large offsets.
  const double big = 1e15;
  const Point a(big, big);
  const Point b(big + 1.0, big + 1.0);
  const Point c(big + 2.0, std::nextafter(big + 2.0, 1e300));
  EXPECT_EQ(orientation(a, b, c), 1);
  const Point c2(big + 2.0, std::nextafter(big + 2.0, 0.0));
  EXPECT_EQ(orientation(a, b, c2), -1);
  EXPECT_EQ(orientation(a, b, Point(big + 2.0, big + 2.0)), 0);
}

TEST(Orientation, AgreesWithLongDoubleWhereThatIsUnambiguous) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Point a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    const long double det = (static_cast<long double>(b.real()) - a.real()) * (static_cast<long double>(c.imag()) - a.imag()) -
                            (static_cast<long double>(b.imag()) - a.imag()) * (static_cast<long double>(c.real()) - a.real());
    if (std::abs(det) < 1e-12L) continue;
    EXPECT_EQ(orientation(a, b, c), det > 0 ? 1 : -1);
  }
}

TEST(SegmentsIntersect, ProperAndImproperContacts) {
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  // Shared endpoint.
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 1}));
  // T junction.
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 0}, {1, 0}, {1, 1}));
  // Collinear overlap and collinear disjoint.
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
}

TEST(Wrap, RangesAndUnit) {
  EXPECT_NEAR(wrap_two_pi(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_two_pi(kTwoPi + 0.25), 0.25, 1e-15);
  EXPECT_NEAR(wrap_pi(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(std::abs(unit(1.234)), 1.0, 1e-15);
}

namespace {

std::vector<Complex> sample_loop(std::size_t n, auto&& f) {
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
  return out;
}

// Independent oracle: dense atan2 unwrapping.
double brute_turns(auto&& f) {
  const int n = 200000;
  double total = 0.0;
  double prev = std::atan2(f(0.0).imag(), f(0.0).real());
  for (int i = 1; i <= n; ++i) {
    const Complex z = f(kTwoPi * i / n);
    const double a = std::atan2(z.imag(), z.real());
    double d = a - prev;
    while (d > kPi) d -= kTwoPi;
    while (d < -kPi) d += kTwoPi;
    total += d;
    prev = a;
  }
  return total / kTwoPi;
}

}  // namespace

TEST(WindingNumber, UnitCircleOnce) {
  EXPECT_EQ(winding_number(sample_loop(256, [](double p) { return unit(p); })), 1);
}

TEST(WindingNumber, TwiceClockwise) {
  EXPECT_EQ(winding_number(sample_loop(256, [](double p) { return unit(-2 * p); })), -2);
}

TEST(WindingNumber, ForwardThenBackLoopIsZero) {
  // Goes once around the origin and then unwinds along a different radius.
  auto f = [](double p) { return (1.0 + 0.5 * std::cos(p)) * unit(kPi * (1.0 - std::cos(p))); };
  EXPECT_NEAR(brute_turns(f), 0.0, 1e-9);
  EXPECT_EQ(winding_number(sample_loop(512, f)), 0);
}

TEST(WindingNumber, ShiftedCircleNotEnclosingOrigin) {
  auto f = [](double p) { return Complex(3.0, 0.0) + unit(p); };
  EXPECT_EQ(winding_number(sample_loop(64, f)), 0);
}

TEST(WindingNumber, RejectsOriginAndSparseLoops) {
  std::vector<Complex> through{{1, 0}, {0, 0}, {-1, 1}};
  try {
    winding_number(through);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OriginOnLoop);
  }
  try {
    winding_number(sample_loop(4, [](double p) { return unit(p); }));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientDensity);
  }
}
