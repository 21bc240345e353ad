#include <gtest/gtest.h>

#include <cmath>

#include "gclink/errors.hpp"
#include "gclink/rational_angle.hpp"
#include "test_support.hpp"

using gclink::InvalidInput;
using gclink::RationalAngle;
using gclink::testing::kPi;
using gclink::testing::rng;

TEST(RationalAngle, NormalisesToLowestTermsModTwoPi) {
  EXPECT_EQ(RationalAngle(2, 4), RationalAngle(1, 2));
  EXPECT_EQ(RationalAngle(-1, 2).num(), 3);
  EXPECT_EQ(RationalAngle(-1, 2).den(), 2);
  EXPECT_EQ(RationalAngle(7, 3), RationalAngle(1, 3));
  EXPECT_EQ(RationalAngle(4, 2), RationalAngle(0, 1));
  EXPECT_EQ(RationalAngle(0, 17).den(), 1);
  EXPECT_THROW(RationalAngle(1, 0), InvalidInput);
  EXPECT_THROW(RationalAngle(1, -3), InvalidInput);
}

TEST(RationalAngle, CosSinExactAtQuarterTurns) {
  for (int k = 0; k < 4; ++k) {
    const auto cs = RationalAngle(k, 2).cos_sin();
    EXPECT_EQ(cs.cos, std::round(std::cos(k * kPi / 2)));
    EXPECT_EQ(cs.sin, std::round(std::sin(k * kPi / 2)));
  }
}

TEST(RationalAngle, AntipodalAnglesGiveExactlyNegatedValues) {
  std::uniform_int_distribution<std::int64_t> den(1, 500);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::int64_t d = den(rng());
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(0, 2 * d - 1)(rng());
    const RationalAngle a(n, d);
    const auto x = a.cos_sin();
    const auto y = (a + RationalAngle(1, 1)).cos_sin();
    EXPECT_EQ(x.cos, -y.cos);
    EXPECT_EQ(x.sin, -y.sin);
    // radians() is itself rounded, so the libm reference drifts by a few ulps.
    EXPECT_NEAR(x.cos, std::cos(a.radians()), 4e-15);
    EXPECT_NEAR(x.sin, std::sin(a.radians()), 4e-15);
  }
}

TEST(RationalAngle, ArithmeticIsAGroupModTwoPi) {
  std::uniform_int_distribution<std::int64_t> den(1, 200), num(-1000, 1000);
  for (int trial = 0; trial < 2000; ++trial) {
    const RationalAngle a(num(rng()), den(rng())), b(num(rng()), den(rng()));
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ(a + (-a), RationalAngle());
    EXPECT_EQ(a.scaled(3), a + a + a);
    EXPECT_EQ(a.scaled(-1), -a);
    EXPECT_NEAR(std::remainder((a + b).radians() - a.radians() - b.radians(), 2 * kPi), 0.0, 1e-12);
  }
}

TEST(RationalAngle, ModPiQueries) {
  const RationalAngle a(1, 5), b(6, 5);
  EXPECT_TRUE(a.congruent_mod_pi(b));
  EXPECT_FALSE(a.congruent_mod_pi(RationalAngle(2, 5)));
  EXPECT_EQ(b.reduced_mod_pi(), a);
  EXPECT_EQ(RationalAngle(4, 5).distance_to_pi_multiple(), RationalAngle(1, 5));
  EXPECT_EQ(RationalAngle(1, 2).distance_to_pi_multiple(), RationalAngle(1, 2));
  EXPECT_TRUE(RationalAngle(1, 1).is_multiple_of_pi());
  EXPECT_EQ(RationalAngle(1, 3).sin_sign(), 1);
  EXPECT_EQ(RationalAngle(4, 3).sin_sign(), -1);
  EXPECT_EQ(RationalAngle(1, 1).sin_sign(), 0);
}

TEST(RationalAngle, UnitsOfPiOverQ) {
  EXPECT_EQ(RationalAngle(2, 5).in_units_of(5), 2);
  EXPECT_EQ(RationalAngle(2, 5).in_units_of(10), 4);
  EXPECT_EQ(RationalAngle(1, 1).in_units_of(7), 7);
  EXPECT_FALSE(RationalAngle(1, 3).in_units_of(5).has_value());
  EXPECT_FALSE(RationalAngle(1, 3).in_units_of(0).has_value());
}

TEST(RationalAngle, OrderAndText) {
  EXPECT_LT(RationalAngle(1, 3), RationalAngle(1, 2));
  EXPECT_FALSE(RationalAngle(1, 2) < RationalAngle(2, 4));
  EXPECT_EQ(RationalAngle(4, 10).to_string(), "2/5");
  EXPECT_EQ(RationalAngle(0, 3).to_string(), "0/1");
}
