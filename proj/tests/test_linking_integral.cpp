#include <gtest/gtest.h>

#include "gclink/errors.hpp"
#include "gclink/greatlink.hpp"
#include "gclink/linking_integral.hpp"
#include "test_support.hpp"

using namespace gclink;
using gclink::testing::rng;

namespace {

const GreatCircle kZCircle = GreatCircle::from_frame(Vec4::Unit(0), Vec4::Unit(1));
const GreatCircle kWCircle = GreatCircle::from_frame(Vec4::Unit(2), Vec4::Unit(3));

}  // namespace

TEST(StereographicChart, RotationSendsPoleToNorthAndKeepsOrientation) {
  for (int trial = 0; trial < 200; ++trial) {
    const Vec4 pole = gclink::testing::random_unit(rng());
    const auto chart = StereographicChart::from_pole(pole);
    EXPECT_LT((chart.rotation * pole - Vec4::Unit(3)).norm(), 1e-12);
    EXPECT_NEAR(chart.rotation.determinant(), 1.0, 1e-12);
  }
}

TEST(StereographicChart, PushTangentMatchesFiniteDifference) {
  const auto chart = StereographicChart::from_pole(Vec4(0.5, 0.5, 0.5, 0.5));
  const auto c = gclink::testing::random_circle(rng());
  for (double t : {0.1, 1.3, 2.9}) {
    const double h = 1e-6;
    const Eigen::Vector3d fd = (chart.project(c.point(t + h)) - chart.project(c.point(t - h))) / (2 * h);
    const Vec4 dx = -c.u() * std::sin(t) + c.v() * std::cos(t);
    EXPECT_LT((chart.push_tangent(c.point(t), dx) - fd).norm(), 1e-6 * (1 + fd.norm()));
  }
}

TEST(GaussLinkingIntegral, ZAndWCirclesLinkPositively) {
  EXPECT_NEAR(gauss_linking_integral(kZCircle, kWCircle, 512), 1.0, 1e-3);
}

TEST(GaussLinkingIntegral, ComponentsOfD25MatchDeterminantSign) {
  const auto link = construct_dpq(2, 5);
  for (std::size_t i = 0; i < link.size(); ++i) {
    for (std::size_t j = i + 1; j < link.size(); ++j) {
      const double value = gauss_linking_integral(link.component(i), link.component(j), 512);
      EXPECT_NEAR(value, linking_number(link.component(i), link.component(j)), 1e-3);
    }
  }
}

TEST(GaussLinkingIntegral, SymmetricUnderSwap) {
  for (int trial = 0; trial < 10; ++trial) {
    const auto c1 = gclink::testing::random_circle(rng());
    const auto c2 = gclink::testing::random_circle(rng());
    if (circle_distance(c1, c2) < 1e-3) continue;
    EXPECT_NEAR(gauss_linking_integral(c1, c2, 512), gauss_linking_integral(c2, c1, 512), 1e-9);
  }
}

TEST(GaussLinkingIntegral, IndependentOfProjectionPole) {
  const auto c1 = gclink::testing::random_circle(rng());
  const auto c2 = gclink::testing::random_circle(rng());
  GaussLinkingOptions a{.samples = 1024, .pole = Vec4(1, 0, 0, 0)};
  GaussLinkingOptions b{.samples = 1024, .pole = Vec4(0.5, -0.5, 0.5, 0.5)};
  EXPECT_NEAR(gauss_linking_integral(c1, c2, a), gauss_linking_integral(c1, c2, b), 1e-6);
}

TEST(GaussLinkingIntegral, SerialAndParallelKernelsAgree) {
  const auto c1 = gclink::testing::random_circle(rng());
  const auto c2 = gclink::testing::random_circle(rng());
  GaussLinkingOptions serial{.samples = 600, .parallel = false};
  GaussLinkingOptions parallel{.samples = 600, .parallel = true};
  EXPECT_NEAR(gauss_linking_integral(c1, c2, serial), gauss_linking_integral(c1, c2, parallel), 1e-12);
}

TEST(GaussLinkingIntegral, PoleOnACircleIsMovedOff) {
  GaussLinkingOptions o{.samples = 512, .pole = Vec4::Unit(0)};
  EXPECT_NEAR(gauss_linking_integral(kZCircle, kWCircle, o), 1.0, 1e-3);
}

TEST(GaussLinkingIntegral, RandomPairsAgreeWithLinkingNumber) {
  // Reduced version of the 10³-pair sweep run by the acceptance binary.
  int tested = 0;
  while (tested < 60) {
    const auto c1 = gclink::testing::random_circle(rng());
    const auto c2 = gclink::testing::random_circle(rng());
    if (circle_distance(c1, c2) < 1e-6) continue;
    EXPECT_NEAR(gauss_linking_integral(c1, c2, 4096), linking_number(c1, c2), 1e-3);
    ++tested;
  }
}

TEST(GaussLinkingIntegral, NearlyTouchingCirclesStillConverge) {
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const auto c1 = GreatCircle::from_frame(Vec4::Unit(0), Vec4::Unit(1));
    const auto c2 = GreatCircle::from_frame(Vec4(std::cos(eps), 0, std::sin(eps), 0),
                                            Vec4(0, std::cos(1.0), 0, std::sin(1.0)));
    ASSERT_NEAR(circle_distance(c1, c2), eps, 1e-9);
    EXPECT_NEAR(gauss_linking_integral(c1, c2, 2048), linking_number(c1, c2), 1e-3);
  }
}

TEST(GaussLinkingIntegral, RejectsBadInput) {
  EXPECT_THROW(gauss_linking_integral(kZCircle, kWCircle, 32), InvalidInput);
  EXPECT_THROW(gauss_linking_integral(kZCircle, kZCircle, 512), NotDisjoint);
}
