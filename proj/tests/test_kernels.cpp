#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gclink/greatlink.hpp"
#include "gclink/kernels.hpp"
#include "gclink/linking_integral.hpp"
#include "test_support.hpp"

using namespace gclink;
using gclink::testing::kPi;
using gclink::testing::rng;

namespace {

std::vector<double> random_frames(int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const auto c = gclink::testing::random_circle(rng());
    for (int k = 0; k < 4; ++k) out.push_back(c.u()(k));
    for (int k = 0; k < 4; ++k) out.push_back(c.v()(k));
  }
  return out;
}

GreatCircle frame_circle(const std::vector<double>& f, int i) {
  return GreatCircle::from_frame(Vec4(f[8 * i], f[8 * i + 1], f[8 * i + 2], f[8 * i + 3]),
                                 Vec4(f[8 * i + 4], f[8 * i + 5], f[8 * i + 6], f[8 * i + 7]));
}

std::vector<double> ellipse(int n, double rx, double ry, double phase, double cx = 0.0) {
  std::vector<double> xy(2 * n);
  for (int k = 0; k < n; ++k) {
    const double t = 2 * kPi * k / n + phase;
    xy[2 * k] = cx + rx * std::cos(t);
    xy[2 * k + 1] = ry * std::sin(t);
  }
  return xy;
}

}  // namespace

TEST(GaussSum, SerialAndParallelAgree) {
  for (int trial = 0; trial < 5; ++trial) {
    const auto c1 = gclink::testing::random_circle(rng());
    const auto c2 = gclink::testing::random_circle(rng());
    const auto chart = StereographicChart::from_pole(default_pole(c1, c2));
    const auto a = sample_in_chart(c1, chart, 300, 0.0, 1.0);
    const auto b = sample_in_chart(c2, chart, 257, 0.4, 0.7);
    const double s = kernels::gauss_sum_serial(a, b);
    EXPECT_NEAR(kernels::gauss_sum_omp(a, b), s, 1e-11 * (1 + std::abs(s)));
  }
}

TEST(GaussSum, FarApartUnlinkedLoopsGiveZero) {
  // Two coplanar circles in R³ far from each other.
  kernels::CurveSamples a, b;
  const int n = 256;
  a.resize(n);
  b.resize(n);
  for (int k = 0; k < n; ++k) {
    const double t = 2 * kPi * k / n, h = 2 * kPi / n;
    a.x[k] = std::cos(t);
    a.y[k] = std::sin(t);
    a.z[k] = 0;
    a.tx[k] = -std::sin(t) * h;
    a.ty[k] = std::cos(t) * h;
    a.tz[k] = 0;
    b.x[k] = 10 + std::cos(t);
    b.y[k] = std::sin(t);
    b.z[k] = 0;
    b.tx[k] = a.tx[k];
    b.ty[k] = a.ty[k];
    b.tz[k] = 0;
  }
  EXPECT_NEAR(kernels::gauss_sum_serial(a, b), 0.0, 1e-12);
}

TEST(PairGeometry, MatchesGeom4) {
  const auto frames = random_frames(40);
  const auto table = kernels::pairwise_geometry_serial(frames);
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 40; ++j) {
      if (i == j) continue;
      const auto c1 = frame_circle(frames, i), c2 = frame_circle(frames, j);
      EXPECT_NEAR(table[i * 40 + j].determinant, linking_determinant(c1, c2), 1e-12);
      EXPECT_NEAR(table[i * 40 + j].smaller_angle, circle_distance(c1, c2), 1e-10);
    }
  }
}

TEST(PairGeometry, SerialAndParallelAgreeExactly) {
  const auto frames = random_frames(64);
  const auto a = kernels::pairwise_geometry_serial(frames);
  const auto b = kernels::pairwise_geometry_omp(frames);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].determinant, b[k].determinant);
    EXPECT_EQ(a[k].smaller_angle, b[k].smaller_angle);
  }
}

TEST(SampledWinding, UnitCircleWindsOncePositively) {
  const auto s = kernels::sampled_winding_serial({1.0, 0.0, 0.0, 1.0}, 1000);
  EXPECT_TRUE(s.strictly_monotone);
  EXPECT_NEAR(s.total, 2 * kPi, 1e-12);
  const auto r = kernels::sampled_winding_serial({1.0, 0.0, 0.0, -1.0}, 1000);
  EXPECT_TRUE(r.strictly_monotone);
  EXPECT_NEAR(r.total, -2 * kPi, 1e-12);
}

TEST(SampledWinding, DegenerateEllipseThroughOriginIsNotMonotone) {
  // w(t) = cos t + 0·sin t passes through 0.
  const auto s = kernels::sampled_winding_serial({1.0, 0.0, 0.0, 0.0}, 1000);
  EXPECT_FALSE(s.strictly_monotone && std::abs(std::abs(s.total) - 2 * kPi) < 1e-6);
}

TEST(SampledWinding, SerialAndParallelAgree) {
  std::normal_distribution<double> n;
  std::vector<kernels::WindingInput> in(50);
  for (auto& w : in) w = {n(rng()), n(rng()), n(rng()), n(rng())};
  const auto batch = kernels::sampled_winding_omp(in, 997);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto s = kernels::sampled_winding_serial(in[i], 997);
    EXPECT_EQ(batch[i].strictly_monotone, s.strictly_monotone);
    EXPECT_EQ(batch[i].total, s.total);
    // Oracle: a nondegenerate ellipse winds once, with the sign of Im(conj(a)·b).
    const double rate = in[i].a_re * in[i].b_im - in[i].a_im * in[i].b_re;
    EXPECT_NEAR(s.total, rate > 0 ? 2 * kPi : -2 * kPi, 1e-9);
  }
}

TEST(PolylineCrossings, TwoEllipsesCrossFourTimes) {
  const auto a = ellipse(400, 2.0, 1.0, 0.0), b = ellipse(400, 1.0, 2.0, 0.01);
  const auto hits = kernels::polyline_crossings_serial(a, b);
  EXPECT_EQ(hits.size(), 4u);
  for (const auto& h : hits) {
    EXPECT_GE(h.ta, 0.0);
    EXPECT_LT(h.ta, 1.0);
    EXPECT_GE(h.tb, 0.0);
    EXPECT_LT(h.tb, 1.0);
  }
}

TEST(PolylineCrossings, DisjointAndNestedCurvesDoNotCross) {
  EXPECT_TRUE(kernels::polyline_crossings_serial(ellipse(200, 1, 1, 0), ellipse(200, 1, 1, 0, 5)).empty());
  EXPECT_TRUE(kernels::polyline_crossings_serial(ellipse(200, 1, 1, 0), ellipse(200, 3, 3, 0)).empty());
}

TEST(PolylineCrossings, SerialAndParallelAgree) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = ellipse(300, 1 + u(rng()) * 0.5, 1 + u(rng()) * 0.5, u(rng()), u(rng()));
    const auto b = ellipse(301, 1 + u(rng()) * 0.5, 1 + u(rng()) * 0.5, u(rng()), u(rng()));
    const auto s = kernels::polyline_crossings_serial(a, b);
    const auto p = kernels::polyline_crossings_omp(a, b);
    ASSERT_EQ(s.size(), p.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_EQ(s[k].segment_a, p[k].segment_a);
      EXPECT_EQ(s[k].segment_b, p[k].segment_b);
      EXPECT_EQ(s[k].ta, p[k].ta);
      EXPECT_EQ(s[k].tb, p[k].tb);
    }
    EXPECT_EQ(s.size() % 2, 0u);
  }
}
