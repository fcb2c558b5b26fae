#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "ivo/collision_cone.hpp"
#include "ivo/errors.hpp"
#include "test_support.hpp"

namespace {

using ivo::ObstacleTrack;
using ivo::Vec2;
using ivo::testing::RandomVectors;
using ivo::testing::rel_error;

ObstacleTrack track(Vec2 prev, double t0, Vec2 curr, double t1, double radius = 0.5) {
  return {{ivo::EntityKind::kPassive, 0}, {prev, t0}, {curr, t1}, radius};
}

// Closed-form closest approach over t >= 0, written independently of the library.
double analytic_min_distance(const Vec2& r, const Vec2& v) {
  const double vv = v.x * v.x + v.y * v.y;
  const double t = std::max(0.0, -(r.x * v.x + r.y * v.y) / vv);
  return std::hypot(r.x + v.x * t, r.y + v.y * t);
}

TEST(EstimateRelativeVelocity, FiniteDifference) {
  const Vec2 v = ivo::estimate_relative_velocity(track({2, 2}, 0.0, {1.5, 1.8}, 0.1));
  EXPECT_NEAR(v.x, -5.0, 1e-12);
  EXPECT_NEAR(v.y, -2.0, 1e-12);
}

TEST(EstimateRelativeVelocity, StationaryRelative) {
  EXPECT_EQ(ivo::estimate_relative_velocity(track({1, 1}, 0.0, {1, 1}, 0.1)), (Vec2{0, 0}));
}

TEST(EstimateRelativeVelocity, GlobalMotionSeenFromEgoFrame) {
  // Obstacle at (5,0) moving (-1,0); agent at the origin moving (1,0); delta 0.1.
  const double delta = 0.1;
  const Vec2 x_o{5, 0}, v_o{-1, 0}, x_r{0, 0}, v_r{1, 0};
  const Vec2 prev = x_o - x_r;
  const Vec2 curr = (x_o + v_o * delta) - (x_r + v_r * delta);
  const Vec2 v = ivo::estimate_relative_velocity(track(prev, 0.0, curr, delta));
  EXPECT_NEAR(v.x, -2.0, 1e-13);
  EXPECT_NEAR(v.y, 0.0, 1e-13);
}

TEST(EstimateRelativeVelocity, RejectsShortInterval) {
  EXPECT_THROW(ivo::estimate_relative_velocity(track({0, 0}, 1.0, {1, 0}, 1.0 + 1e-7)),
               ivo::DegenerateInterval);
  EXPECT_THROW(ivo::estimate_relative_velocity(track({0, 0}, 1.0, {1, 0}, 0.5)),
               ivo::DegenerateInterval);
  EXPECT_NO_THROW(ivo::estimate_relative_velocity(track({0, 0}, 1.0, {1, 0}, 1.1), 1e-3));
}

TEST(EstimateRelativeVelocity, ExactForConstantVelocities) {
  RandomVectors rnd(21);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 x_o = rnd.vec(-20, 20), v_o = rnd.vec(-3, 3);
    const Vec2 x_r = rnd.vec(-20, 20), v_r = rnd.vec(-3, 3);
    const double t = rnd.uniform(0, 100);
    const double delta = rnd.uniform(0.01, 0.5);
    const Vec2 prev = (x_o + v_o * t) - (x_r + v_r * t);
    const Vec2 curr = (x_o + v_o * (t + delta)) - (x_r + v_r * (t + delta));
    const Vec2 est = ivo::estimate_relative_velocity(track(prev, t, curr, t + delta));
    const Vec2 want = v_o - v_r;
    // Finite-difference cancellation scales with |positions| / delta.
    const double tol = 1e-13 * (ivo::norm(prev) + ivo::norm(curr) + 1.0) / delta;
    EXPECT_LE(ivo::norm(est - want), tol);
  }
}

TEST(ConeValue, Examples) {
  EXPECT_DOUBLE_EQ(ivo::cone_value({2, 0}, {-1, 0}, 1), 1.0);
  EXPECT_DOUBLE_EQ(ivo::cone_value({2, 0}, {0, 1}, 1), -3.0);
  EXPECT_NEAR(ivo::cone_value({3, 4}, {-3, -4}, 1), 1.0, 1e-12);
}

TEST(ConeValue, DegenerateVelocityThrows) {
  EXPECT_THROW(ivo::cone_value({2, 0}, {0, 0}, 1), ivo::DegenerateVelocity);
  EXPECT_THROW(ivo::cone_value({2, 0}, {1e-10, 0}, 1), ivo::DegenerateVelocity);
}

TEST(ConeValue, ScaleCovariance) {
  RandomVectors rnd(22);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 r = rnd.vec(-10, 10), v = rnd.vec(-2, 2);
    const double R = rnd.uniform(0.1, 3), k = rnd.uniform(0.1, 10);
    const double base = ivo::cone_value(r, v, R);
    EXPECT_LE(rel_error(ivo::cone_value(r * k, v * k, R * k), k * k * base),
              1e-11 * std::max(1.0, ivo::squared_norm(r)));
  }
}

TEST(ConeValue, RotationInvariance) {
  RandomVectors rnd(23);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 r = rnd.vec(-10, 10), v = rnd.vec(-2, 2);
    const double R = rnd.uniform(0.1, 3), theta = rnd.uniform(-7, 7);
    const double base = ivo::cone_value(r, v, R);
    const double turned = ivo::cone_value(ivo::rotated(r, theta), ivo::rotated(v, theta), R);
    EXPECT_LE(std::abs(turned - base), 1e-11 * std::max(1.0, ivo::squared_norm(r)));
  }
}

TEST(OnCollisionCourse, Examples) {
  EXPECT_TRUE(ivo::on_collision_course({2, 0}, {-1, 0}, 1));
  EXPECT_FALSE(ivo::on_collision_course({2, 0}, {1, 0}, 1));
  EXPECT_FALSE(ivo::on_collision_course({2, 0}, {0, 1}, 1));
}

TEST(OnCollisionCourse, StaticFallbackAndOverlap) {
  EXPECT_FALSE(ivo::on_collision_course({2, 0}, {0, 0}, 1));
  EXPECT_TRUE(ivo::on_collision_course({0.5, 0}, {0, 0}, 1));
  // Already overlapping counts as colliding whichever way the obstacle moves.
  EXPECT_TRUE(ivo::on_collision_course({0.5, 0}, {1, 0}, 1));
}

TEST(OnCollisionCourse, MatchesClosedFormClosestApproach) {
  RandomVectors rnd(24);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const Vec2 r = rnd.vec(-10, 10), v = rnd.vec(-2, 2);
    const double R = rnd.uniform(0.1, 3);
    if (ivo::norm(r) <= R || ivo::norm(v) < 1e-6 || std::abs(ivo::cone_value(r, v, R)) <= 1e-6) {
      continue;
    }
    ++checked;
    EXPECT_EQ(ivo::on_collision_course(r, v, R), analytic_min_distance(r, v) <= R)
        << "r=(" << r.x << "," << r.y << ") v=(" << v.x << "," << v.y << ") R=" << R;
  }
  EXPECT_GT(checked, 9000);
}

TEST(ConeViolation, ApproachingFilter) {
  EXPECT_DOUBLE_EQ(ivo::cone_violation({2, 0}, {-1, 0}, 1, true), 1.0);
  EXPECT_EQ(ivo::cone_violation({2, 0}, {1, 0}, 1, true), 0.0);
  EXPECT_DOUBLE_EQ(ivo::cone_violation({2, 0}, {1, 0}, 1, false), 1.0);
  EXPECT_EQ(ivo::cone_violation({2, 0}, {0, 1}, 1, true), 0.0);
}

TEST(ConeViolation, DegenerateVelocityUsesOverlapDepth) {
  EXPECT_EQ(ivo::cone_violation({2, 0}, {0, 0}, 1, true), 0.0);
  EXPECT_DOUBLE_EQ(ivo::cone_violation({0.5, 0}, {0, 0}, 1, true), 0.75);
}

TEST(TimeToContact, HeadOnAndMisses) {
  EXPECT_DOUBLE_EQ(ivo::time_to_contact({3, 0}, {-1, 0}, 1), 2.0);
  EXPECT_EQ(ivo::time_to_contact({0.5, 0}, {-1, 0}, 1), 0.0);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(ivo::time_to_contact({3, 0}, {1, 0}, 1), inf);
  EXPECT_EQ(ivo::time_to_contact({3, 0}, {0, 1}, 1), inf);
  EXPECT_EQ(ivo::time_to_contact({3, 0}, {0, 0}, 1), inf);
}

TEST(ConeCoefficients, HandExpansion) {
  const auto c = ivo::cone_coefficients({2, 0}, {0, 0}, 1);
  EXPECT_DOUBLE_EQ(c.c1, 1.0);
  EXPECT_DOUBLE_EQ(c.c2, -3.0);
  EXPECT_EQ(c.c3, 0.0);
  EXPECT_EQ(c.c4, 0.0);
  EXPECT_EQ(c.c5, 0.0);
  EXPECT_EQ(c.c6, 0.0);
}

// Exact rationals from tests/oracles/derive.py (symbolic expansion).
TEST(ConeCoefficients, SymbolicReferenceValues) {
  const auto a = ivo::cone_coefficients({3, -1}, {0.5, 2}, 1.5);
  EXPECT_DOUBLE_EQ(a.c1, 5.0 / 4);
  EXPECT_DOUBLE_EQ(a.c2, -27.0 / 4);
  EXPECT_DOUBLE_EQ(a.c3, -6.0);
  EXPECT_DOUBLE_EQ(a.c4, 43.0 / 4);
  EXPECT_DOUBLE_EQ(a.c5, 30.0);
  EXPECT_DOUBLE_EQ(a.c6, -523.0 / 16);

  const auto b = ivo::cone_coefficients({-4, 2.5}, {-1, 0.25}, 0.75);
  EXPECT_DOUBLE_EQ(b.c1, -91.0 / 16);
  EXPECT_DOUBLE_EQ(b.c2, -247.0 / 16);
  EXPECT_DOUBLE_EQ(b.c3, -20.0);
  EXPECT_DOUBLE_EQ(b.c4, -51.0 / 8);
  EXPECT_DOUBLE_EQ(b.c5, -393.0 / 32);
  EXPECT_DOUBLE_EQ(b.c6, -423.0 / 256);
}

TEST(ConeCoefficients, MatchesHomogenizedConeValue) {
  RandomVectors rnd(25);
  for (int i = 0; i < 200; ++i) {
    const Vec2 r = rnd.vec(-10, 10), v_o = rnd.vec(-2, 2);
    const double R = rnd.uniform(0.1, 3);
    const auto c = ivo::cone_coefficients(r, v_o, R);
    for (int j = 0; j < 100; ++j) {
      const Vec2 v_r = rnd.vec(-2, 2);
      const Vec2 w = v_o - v_r;
      const double want = ivo::cone_value(r, w, R) * ivo::squared_norm(w);
      const double scale = (ivo::squared_norm(r) + R * R) * ivo::squared_norm(w);
      EXPECT_LE(std::abs(c.evaluate(v_r) - want), 1e-9 * std::max(scale, 1e-300));
    }
  }
}

TEST(ConeCoefficients, VanishesAtZeroRelativeVelocity) {
  RandomVectors rnd(26);
  for (int i = 0; i < 100; ++i) {
    const Vec2 r = rnd.vec(-10, 10), v_o = rnd.vec(-2, 2);
    const auto c = ivo::cone_coefficients(r, v_o, rnd.uniform(0.1, 3));
    EXPECT_NEAR(c.evaluate(v_o), 0.0, 1e-10);
  }
}

TEST(MinSeparation, Examples) {
  const auto head_on = ivo::min_separation({2, 0}, {-1, 0}, 10, 1e-3);
  EXPECT_NEAR(head_on.t_star, 2.0, 1e-3);
  EXPECT_NEAR(head_on.d_star, 0.0, 1e-3);

  const auto perpendicular = ivo::min_separation({2, 0}, {0, 1}, 10, 1e-3);
  EXPECT_EQ(perpendicular.t_star, 0.0);
  EXPECT_EQ(perpendicular.d_star, 2.0);

  const auto offset = ivo::min_separation({3, 4}, {-1, 0}, 20, 1e-3);
  EXPECT_NEAR(offset.t_star, 3.0, 1e-3);
  EXPECT_NEAR(offset.d_star, 4.0, 1e-6);
}

}  // namespace
