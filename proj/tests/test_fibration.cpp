#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "gclink/errors.hpp"
#include "gclink/fibration.hpp"
#include "gclink/kernels.hpp"
#include "test_support.hpp"

using namespace gclink;
using gclink::testing::coprime_fractions;
using gclink::testing::kPi;
using gclink::testing::rng;

namespace {

GreatCircle z_circle() { return GreatCircle::from_frame(Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0)); }
GreatCircle w_circle() { return GreatCircle::from_frame(Vec4(0, 0, 1, 0), Vec4(0, 0, 0, 1)); }

}  // namespace

TEST(Fibration, HopfLinkFromTheZCircle) {
  const GreatCircleLink hopf({z_circle(), w_circle()});
  const auto cert = fibration_certificate(hopf, 0);
  ASSERT_EQ(cert.records.size(), 1u);
  EXPECT_NEAR(cert.records[0].winding_rate, 1.0, 1e-12);
  EXPECT_NEAR(cert.records[0].clearance, 1.0, 1e-12);
  EXPECT_EQ(cert.records[0].winding_sign, 1);
  EXPECT_EQ(cert.fiber_punctures, 1);
  EXPECT_EQ(cert.fiber_euler_characteristic, 0);
}

TEST(Fibration, ReversedComponentFlipsTheSign) {
  const GreatCircleLink hopf({z_circle(), w_circle().reversed()});
  EXPECT_EQ(fibration_certificate(hopf, 0).records[0].winding_sign, -1);
}

TEST(Fibration, TwoFifths) {
  const auto link = construct_dpq(2, 5);
  const auto cert = fibration_certificate(link, 0);
  EXPECT_EQ(cert.records.size(), 4u);
  EXPECT_EQ(cert.fiber_punctures, 4);
  EXPECT_EQ(cert.fiber_euler_characteristic, -3);
  for (const auto& r : cert.records) EXPECT_NE(r.component, 0);
}

TEST(Fibration, AllFibrationsCounts) {
  EXPECT_EQ(all_fibrations(construct_dpq(2, 5)).size(), 5u);
  EXPECT_EQ(all_fibrations(construct_dpq(1, 2)).size(), 2u);
  const auto single = all_fibrations(GreatCircleLink({z_circle()}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_TRUE(single[0].records.empty());
  EXPECT_EQ(single[0].fiber_euler_characteristic, 1);
}

TEST(Fibration, IntersectingComponentIsRejected) {
  const GreatCircleLink bad({GreatCircle::from_axes({0, 1}, {0, 1}), GreatCircle::from_axes({0, 1}, {1, 2})});
  EXPECT_THROW(fibration_certificate(bad, 0), NotDisjoint);
  EXPECT_THROW(all_fibrations(bad), NotDisjoint);
  const GreatCircleLink twice({z_circle(), z_circle().reversed()});
  EXPECT_THROW(fibration_certificate(twice, 0), NotDisjoint);
}

TEST(Fibration, BaseIndexOutOfRange) {
  const auto link = construct_dpq(1, 3);
  EXPECT_THROW(fibration_certificate(link, 3), InvalidInput);
  EXPECT_THROW(fibration_certificate(link, -1), InvalidInput);
}

TEST(Fibration, SignMatchesLinkingNumber) {
  for (auto [p, q] : coprime_fractions(2, 24)) {
    const auto link = construct_dpq(p, q);
    const auto lk = linking_matrix(link);
    for (const auto& cert : all_fibrations(link)) {
      for (const auto& r : cert.records) EXPECT_EQ(r.winding_sign, lk(cert.base_index, r.component)) << p << "/" << q;
    }
  }
}

TEST(Fibration, ClearanceIsSquaredSineOfDistance) {
  auto& g = rng();
  for (int trial = 0; trial < 300; ++trial) {
    const GreatCircle a = gclink::testing::random_circle(g), b = gclink::testing::random_circle(g);
    const double d = circle_distance(a, b);
    if (d < 1e-3) continue;
    const auto cert = fibration_certificate(GreatCircleLink({a, b}), 0);
    EXPECT_NEAR(cert.records[0].clearance, std::pow(std::sin(d), 2), 1e-9);
    EXPECT_EQ(cert.records[0].winding_sign, linking_number(a, b));
  }
}

TEST(Fibration, RateIsTheLinkingDeterminant) {
  auto& g = rng();
  for (int trial = 0; trial < 300; ++trial) {
    const GreatCircle a = gclink::testing::random_circle(g), b = gclink::testing::random_circle(g);
    if (circle_distance(a, b) < 1e-3) continue;
    const auto cert = fibration_certificate(GreatCircleLink({a, b}), 0);
    EXPECT_NEAR(cert.records[0].winding_rate, linking_determinant(a, b), 1e-10);
  }
}

TEST(Fibration, SignsInvariantUnderRotation) {
  const auto link = construct_dpq(3, 7);
  for (int trial = 0; trial < 10; ++trial) {
    const Isometry r = Isometry::from_matrix(gclink::testing::random_rotation(rng()));
    const auto moved = link.transformed(r);
    const auto before = all_fibrations(link);
    const auto after = all_fibrations(moved);
    for (std::size_t b = 0; b < before.size(); ++b) {
      for (std::size_t k = 0; k < before[b].records.size(); ++k) {
        EXPECT_EQ(before[b].records[k].winding_sign, after[b].records[k].winding_sign);
        EXPECT_NEAR(before[b].records[k].clearance, after[b].records[k].clearance, 1e-10);
      }
    }
  }
}

TEST(Fibration, SampledWindingIsMonotone) {
  for (auto [p, q] : coprime_fractions(2, 12)) {
    const auto link = construct_dpq(p, q);
    for (const auto& cert : all_fibrations(link)) {
      for (const auto& r : cert.records) {
        const auto s = sample_winding(link, cert.base_index, r.component, 1000);
        EXPECT_TRUE(s.strictly_monotone);
        EXPECT_NEAR(s.total, 2 * kPi * r.winding_sign, 1e-9);
      }
    }
  }
}

TEST(Fibration, WindingInputPutsBaseOnTheZCircle) {
  const auto link = construct_dpq(2, 5);
  const Mat4 r = move_to_standard(link.component(0)).matrix();
  for (double t : {0.0, 1.0, 2.5}) {
    const Vec4 x = r * link.component(0).point(t);
    EXPECT_NEAR(std::hypot(x(2), x(3)), 0.0, 1e-12);
  }
  const auto in = winding_input(link, 0, 2);
  const std::complex<double> a(in.a_re, in.a_im), b(in.b_re, in.b_im);
  EXPECT_NEAR(std::imag(std::conj(a) * b), fibration_certificate(link, 0).records[1].winding_rate, 1e-14);
}

TEST(FiberPoints, HopfLinkAtThetaZero) {
  const auto pts = fiber_points(GreatCircleLink({z_circle(), w_circle()}), 0, 0.0);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_NEAR((pts[0].point - Vec4(0, 0, 1, 0)).norm(), 0.0, 1e-12);
}

TEST(FiberPoints, TwoFifthsOnHalfSphere) {
  const auto link = construct_dpq(2, 5);
  const double theta = kPi / 3;
  const auto pts = fiber_points(link, 0, theta);
  ASSERT_EQ(pts.size(), 4u);
  for (const auto& fp : pts) {
    EXPECT_NEAR(fp.point.norm(), 1.0, 1e-12);
    EXPECT_NEAR(point_circle_distance(fp.point, link.component(fp.component)), 0.0, 1e-9);
    EXPECT_NEAR((fp.point - link.component(fp.component).point(fp.parameter)).norm(), 0.0, 1e-12);
    const double r = std::hypot(fp.standard(2), fp.standard(3));
    EXPECT_GT(r, 1e-3);
    EXPECT_NEAR(fp.standard(2), r * std::cos(theta), 1e-12);
    EXPECT_NEAR(fp.standard(3), r * std::sin(theta), 1e-12);
  }
}

TEST(FiberPoints, PeriodicInTheta) {
  const auto link = construct_dpq(3, 8);
  for (double theta : {0.1, 1.7, 4.0}) {
    const auto a = fiber_points(link, 2, theta);
    const auto b = fiber_points(link, 2, theta + 2 * kPi);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR((a[i].point - b[i].point).norm(), 0.0, 1e-10);
  }
}

TEST(FiberPoints, MoveAlongComponentAsThetaTurns) {
  // Each component meets every page once, so the crossing point moves continuously.
  const auto link = construct_dpq(2, 5);
  auto prev = fiber_points(link, 0, 0.0);
  for (int k = 1; k <= 360; ++k) {
    const auto cur = fiber_points(link, 0, 2 * kPi * k / 360.0);
    for (std::size_t i = 0; i < cur.size(); ++i) EXPECT_LT((cur[i].point - prev[i].point).norm(), 0.2);
    prev = cur;
  }
}
