#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ivo/geometry.hpp"
#include "test_support.hpp"

namespace {

using ivo::Vec2;
using ivo::testing::RandomVectors;

TEST(Dot, Examples) {
  EXPECT_EQ(ivo::dot({1, 0}, {0, 1}), 0.0);
  EXPECT_EQ(ivo::dot({2, 3}, {4, -1}), 5.0);
  EXPECT_EQ(ivo::dot({0, 0}, {5, 5}), 0.0);
}

TEST(Norm, Examples) {
  EXPECT_EQ(ivo::norm({3, 4}), 5.0);
  EXPECT_EQ(ivo::norm({0, 0}), 0.0);
  EXPECT_EQ(ivo::norm({-1, 0}), 1.0);
}

TEST(ClampNorm, Examples) {
  EXPECT_EQ(ivo::clamp_norm({3, 4}, 10), (Vec2{3, 4}));
  EXPECT_EQ(ivo::clamp_norm({3, 4}, 5), (Vec2{3, 4}));
  const Vec2 c = ivo::clamp_norm({6, 8}, 5);
  EXPECT_DOUBLE_EQ(c.x, 3.0);
  EXPECT_DOUBLE_EQ(c.y, 4.0);
}

TEST(ClampNorm, ZeroLimitGivesZero) {
  EXPECT_EQ(ivo::clamp_norm({6, 8}, 0.0), (Vec2{0, 0}));
}

TEST(ClampNorm, NeverExceedsLimitAndKeepsDirection) {
  RandomVectors rnd(11);
  for (int i = 0; i < 10000; ++i) {
    const Vec2 a = rnd.vec(-100, 100);
    const double m = rnd.uniform(0, 50);
    const Vec2 c = ivo::clamp_norm(a, m);
    EXPECT_LE(ivo::norm(c), m * (1 + 1e-12));
    if (ivo::norm(c) > 0) {
      EXPECT_NEAR(ivo::cross(a, c), 0.0, 1e-9 * ivo::norm(a) * ivo::norm(c));
      EXPECT_GT(ivo::dot(a, c), 0.0);
    }
  }
}

TEST(Dot, SymmetricAndBilinear) {
  RandomVectors rnd(12);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 a = rnd.vec(-10, 10);
    const Vec2 b = rnd.vec(-10, 10);
    const Vec2 c = rnd.vec(-10, 10);
    const double s = rnd.uniform(-5, 5);
    EXPECT_EQ(ivo::dot(a, b), ivo::dot(b, a));
    EXPECT_NEAR(ivo::dot(a * s + c, b), s * ivo::dot(a, b) + ivo::dot(c, b), 1e-10);
    EXPECT_NEAR(ivo::dot(a, b * s + c), s * ivo::dot(a, b) + ivo::dot(a, c), 1e-10);
  }
}

TEST(Rotation, PreservesNormAndDot) {
  RandomVectors rnd(13);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 a = rnd.vec(-10, 10);
    const Vec2 b = rnd.vec(-10, 10);
    const double theta = rnd.uniform(-10, 10);
    const Vec2 ra = ivo::rotated(a, theta);
    const Vec2 rb = ivo::rotated(b, theta);
    EXPECT_NEAR(ivo::norm(ra), ivo::norm(a), 1e-12 * std::max(1.0, ivo::norm(a)));
    EXPECT_NEAR(ivo::dot(ra, rb), ivo::dot(a, b), 1e-11 * std::max(1.0, std::abs(ivo::dot(a, b))));
  }
}

TEST(Rotation, QuarterTurnIsCounterClockwise) {
  const Vec2 r = ivo::rotated({1, 0}, std::numbers::pi / 2);
  EXPECT_NEAR(r.x, 0.0, 1e-15);
  EXPECT_NEAR(r.y, 1.0, 1e-15);
}

TEST(SignedAngle, SignFollowsOrientation) {
  EXPECT_NEAR(ivo::signed_angle({1, 0}, {0, 1}), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(ivo::signed_angle({1, 0}, {0, -1}), -std::numbers::pi / 2, 1e-15);
  EXPECT_EQ(ivo::signed_angle({1, 0}, {2, 0}), 0.0);
}

TEST(Vec2, Finiteness) {
  EXPECT_TRUE(ivo::is_finite({1, -2}));
  EXPECT_FALSE(ivo::is_finite({std::nan(""), 0}));
  EXPECT_FALSE(ivo::is_finite({0, INFINITY}));
}

}  // namespace
