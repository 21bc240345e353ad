#include "gclink/linking_integral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "gclink/errors.hpp"

namespace gclink {

namespace {

std::array<Vec4, 24> cell24_vertices() {
  std::array<Vec4, 24> out;
  int n = 0;
  for (int axis = 0; axis < 4; ++axis) {
    for (double s : {1.0, -1.0}) out[n++] = s * Vec4::Unit(axis);
  }
  for (int mask = 0; mask < 16; ++mask) {
    Vec4 v;
    for (int k = 0; k < 4; ++k) v(k) = (mask >> k) & 1 ? -0.5 : 0.5;
    out[n++] = v;
  }
  return out;
}

double clearance(const Vec4& x, const GreatCircle& c1, const GreatCircle& c2) {
  return std::min(point_circle_distance(x, c1), point_circle_distance(x, c2));
}

}  // namespace

StereographicChart StereographicChart::from_pole(const Vec4& pole) {
  Eigen::Matrix<double, 4, Eigen::Dynamic> lead(4, 1);
  lead.col(0) = pole.normalized();
  const Mat4 m = complete_rotation(lead);
  Mat4 r;
  r << m.row(1), m.row(2), m.row(3), m.row(0);
  if (r.determinant() < 0.0) r.row(0) = -r.row(0);
  return {lead.col(0), r};
}

Eigen::Vector3d StereographicChart::project(const Vec4& x) const {
  const Vec4 y = rotation * x;
  return y.head<3>() / (1.0 - y(3));
}

Eigen::Vector3d StereographicChart::push_tangent(const Vec4& x, const Vec4& dx) const {
  const Vec4 y = rotation * x;
  const Vec4 dy = rotation * dx;
  const double d = 1.0 - y(3);
  return dy.head<3>() / d + y.head<3>() * (dy(3) / (d * d));
}

Vec4 default_pole(const GreatCircle& c1, const GreatCircle& c2) {
  Vec4 best = Vec4::Unit(3);
  double best_clear = -1.0;
  for (const Vec4& v : cell24_vertices()) {
    const double cl = clearance(v, c1, c2);
    if (cl > best_clear) {
      best_clear = cl;
      best = v;
    }
  }
  return best;
}

kernels::CurveSamples sample_in_chart(const GreatCircle& c, const StereographicChart& chart, int n,
                                      double center, double rho) {
  kernels::CurveSamples out;
  out.resize(n);
  const double h = 2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) {
    const double s = (k + 0.5) * h;
    const double cs = std::cos(s);
    const double sn = std::sin(s);
    const double t = center + std::atan2(rho * sn, cs);
    const double weight = rho / (cs * cs + rho * rho * sn * sn);
    const Vec4 x = c.point(t);
    const Vec4 dx = (-std::sin(t) * c.u() + std::cos(t) * c.v()) * weight;
    const Eigen::Vector3d r = chart.project(x);
    const Eigen::Vector3d dr = chart.push_tangent(x, dx);
    out.x[k] = r(0);
    out.y[k] = r(1);
    out.z[k] = r(2);
    out.tx[k] = dr(0);
    out.ty[k] = dr(1);
    out.tz[k] = dr(2);
  }
  return out;
}

double gauss_linking_integral(const GreatCircle& c1, const GreatCircle& c2,
                              const GaussLinkingOptions& options) {
  if (options.samples < 64) throw InvalidInput("gauss_linking_integral: samples must be >= 64");
  const double theta1 = principal_angles(c1, c2).smaller;
  if (theta1 <= kDefaultTolerance) throw NotDisjoint("circles not disjoint");

  Vec4 pole = options.pole ? options.pole->normalized() : default_pole(c1, c2);
  if (clearance(pole, c1, c2) < 1e-6) {
    const Vec4 away = default_pole(c1, c2);
    for (double step = 1e-3; clearance(pole, c1, c2) < 1e-6; step *= 2.0) {
      pole = (pole + step * away).normalized();
    }
  }
  const StereographicChart chart = StereographicChart::from_pole(pole);

  // Closest-approach parameters from the leading singular vectors of the Gram matrix.
  Eigen::Matrix2d gram;
  gram << c1.u().dot(c2.u()), c1.u().dot(c2.v()), c1.v().dot(c2.u()), c1.v().dot(c2.v());
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(gram, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double t1 = std::atan2(svd.matrixU()(1, 0), svd.matrixU()(0, 0));
  const double t2 = std::atan2(svd.matrixV()(1, 0), svd.matrixV()(0, 0));
  const double rho = std::min(1.0, std::sqrt(theta1));

  const auto a = sample_in_chart(c1, chart, options.samples, t1, rho);
  const auto b = sample_in_chart(c2, chart, options.samples, t2, rho);
  const double sum = options.parallel ? kernels::gauss_sum_omp(a, b) : kernels::gauss_sum_serial(a, b);
  const double h = 2.0 * std::numbers::pi / options.samples;
  return sum * h * h / (4.0 * std::numbers::pi);
}

double gauss_linking_integral(const GreatCircle& c1, const GreatCircle& c2, int samples) {
  GaussLinkingOptions options;
  options.samples = samples;
  return gauss_linking_integral(c1, c2, options);
}

}  // namespace gclink
