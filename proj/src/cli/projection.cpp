#include "gclink/cli/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "gclink/errors.hpp"
#include "gclink/kernels.hpp"

namespace gclink::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPoleClearance = 1e-3;
constexpr double kDepthGap = 1e-6;
constexpr int kMaxSubdivision = 64;
constexpr double kGoldenAngle = 2.399963229728653;

struct PagePoint {
  Eigen::Vector2d page;
  double depth;
  Eigen::Vector2d page_tangent;
};

PagePoint evaluate(const StereographicChart& chart, const GreatCircle& c, double t) {
  const double ct = std::cos(t), st = std::sin(t);
  const Vec4 x = c.u() * ct + c.v() * st;
  const Vec4 dx = -c.u() * st + c.v() * ct;
  const Eigen::Vector3d p = chart.project(x);
  const Eigen::Vector3d dp = chart.push_tangent(x, dx);
  return {{p(1), p(2)}, p(0), {dp(1), dp(2)}};
}

ProjectedCurve sample_curve(const StereographicChart& chart, const GreatCircle& c, int n, double max_step) {
  ProjectedCurve out;
  auto push = [&](double t) {
    const PagePoint p = evaluate(chart, c, t);
    out.t.push_back(t);
    out.xy.push_back(p.page(0));
    out.xy.push_back(p.page(1));
    out.depth.push_back(p.depth);
  };
  const double h = kTwoPi / n;
  for (int k = 0; k < n; ++k) {
    const double t0 = k * h;
    const Eigen::Vector2d a = evaluate(chart, c, t0).page;
    const Eigen::Vector2d b = evaluate(chart, c, t0 + h).page;
    const int pieces = std::clamp(static_cast<int>(std::ceil((b - a).norm() / max_step)), 1, kMaxSubdivision);
    for (int j = 0; j < pieces; ++j) push(t0 + h * j / pieces);
  }
  return out;
}

double segment_parameter(const ProjectedCurve& c, int segment, double frac) {
  const double t0 = c.t[segment];
  const double t1 = segment + 1 < static_cast<int>(c.size()) ? c.t[segment + 1] : kTwoPi;
  return t0 + frac * (t1 - t0);
}

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

double circular_gap(double a, double b) {
  const double d = std::fabs(wrap(a - b));
  return std::min(d, kTwoPi - d);
}

/// Newton's method on page(c1(t1)) = page(c2(t2)).
bool refine(const StereographicChart& chart, const GreatCircle& c1, const GreatCircle& c2, double& t1,
            double& t2) {
  for (int iter = 0; iter < 60; ++iter) {
    const PagePoint a = evaluate(chart, c1, t1);
    const PagePoint b = evaluate(chart, c2, t2);
    const Eigen::Vector2d f = a.page - b.page;
    const double scale = 1.0 + a.page.norm();
    if (f.norm() < 1e-13 * scale) return true;
    Eigen::Matrix2d j;
    j.col(0) = a.page_tangent;
    j.col(1) = -b.page_tangent;
    const double det = j.determinant();
    if (std::fabs(det) < 1e-300) return false;
    Eigen::Vector2d step = j.inverse() * f;
    const double len = step.norm();
    if (len > 0.2) step *= 0.2 / len;
    t1 -= step(0);
    t2 -= step(1);
    if (len < 1e-15 && f.norm() < 1e-10 * scale) return true;
  }
  const Eigen::Vector2d f = evaluate(chart, c1, t1).page - evaluate(chart, c2, t2).page;
  return f.norm() < 1e-10 * (1.0 + evaluate(chart, c1, t1).page.norm());
}

double min_pole_distance(const Vec4& pole, const GreatCircleLink& link) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : link.components()) best = std::min(best, point_circle_distance(pole, c));
  return best;
}

}  // namespace

Vec4 PoleAngles::pole() const {
  return {std::cos(psi) * std::cos(eta), std::sin(psi) * std::cos(eta), std::cos(chi) * std::sin(eta),
          std::sin(chi) * std::sin(eta)};
}

StereographicChart projection_chart(const PoleAngles& a) {
  const Vec4 n = a.pole();
  const Vec4 depth(-std::sin(a.psi), std::cos(a.psi), 0.0, 0.0);
  const Vec4 page_x(std::cos(a.psi) * std::sin(a.eta), std::sin(a.psi) * std::sin(a.eta),
                    -std::cos(a.chi) * std::cos(a.eta), -std::sin(a.chi) * std::cos(a.eta));
  Vec4 page_y(0.0, 0.0, -std::sin(a.chi), std::cos(a.chi));
  Mat4 r;
  r.row(0) = depth.transpose();
  r.row(1) = page_x.transpose();
  r.row(2) = page_y.transpose();
  r.row(3) = n.transpose();
  if (r.determinant() < 0.0) r.row(2) = -r.row(2);
  return {n, r};
}

ProjectionScene render_projection(const GreatCircleLink& link, const ProjectionOptions& options) {
  if (options.samples < 100) throw InvalidInput("projection needs at least 100 samples per component");
  disjointness_report(link);

  ProjectionScene scene;
  scene.samples = options.samples;
  scene.pole = options.pole;
  for (int attempt = 1; min_pole_distance(scene.pole.pole(), link) < kPoleClearance; ++attempt) {
    if (attempt > 64) throw Error("no projection pole clear of the link");
    scene.pole.psi = options.pole.psi + attempt * kGoldenAngle;
    scene.warnings.push_back("projection pole too close to the link; psi moved to " +
                             std::to_string(scene.pole.psi));
  }
  scene.chart = projection_chart(scene.pole);

  const GreatCircle w_axis = GreatCircle::from_frame(Vec4::Unit(2), Vec4::Unit(3));
  const int n = options.samples;
  double reference = 0.0;
  for (int k = 0; k < n; ++k) {
    reference = std::max(reference, evaluate(scene.chart, w_axis, kTwoPi * k / n).page.norm());
  }
  const double max_step = 2.0 * kTwoPi * std::max(reference, 1e-3) / n;
  scene.w_axis = sample_curve(scene.chart, w_axis, n, max_step);

  const int m = static_cast<int>(link.size());
  scene.components.resize(m);
  for (int i = 0; i < m; ++i) scene.components[i] = sample_curve(scene.chart, link.component(i), n, max_step);

  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto& a = scene.components[i];
      const auto& b = scene.components[j];
      const auto hits = options.parallel ? kernels::polyline_crossings_omp(a.xy, b.xy)
                                         : kernels::polyline_crossings_serial(a.xy, b.xy);
      std::vector<Crossing> found;
      for (const auto& hit : hits) {
        double t1 = segment_parameter(a, hit.segment_a, hit.ta);
        double t2 = segment_parameter(b, hit.segment_b, hit.tb);
        if (!refine(scene.chart, link.component(i), link.component(j), t1, t2)) {
          throw Error("unresolved crossing between components " + std::to_string(i) + " and " +
                      std::to_string(j));
        }
        t1 = wrap(t1);
        t2 = wrap(t2);
        const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Crossing& c) {
          const double ci = c.over == i ? c.t_over : c.t_under;
          const double cj = c.over == i ? c.t_under : c.t_over;
          return circular_gap(ci, t1) < 1e-7 && circular_gap(cj, t2) < 1e-7;
        });
        if (duplicate) continue;
        const PagePoint pa = evaluate(scene.chart, link.component(i), t1);
        const PagePoint pb = evaluate(scene.chart, link.component(j), t2);
        if (std::fabs(pa.depth - pb.depth) < kDepthGap) {
          throw Error("unresolved crossing between components " + std::to_string(i) + " and " +
                      std::to_string(j) + ": depth gap below 1e-6");
        }
        const bool a_over = pa.depth > pb.depth;
        const PagePoint& over = a_over ? pa : pb;
        const PagePoint& under = a_over ? pb : pa;
        Crossing c;
        c.x = pa.page(0);
        c.y = pa.page(1);
        c.over = a_over ? i : j;
        c.under = a_over ? j : i;
        c.t_over = a_over ? t1 : t2;
        c.t_under = a_over ? t2 : t1;
        c.depth_over = over.depth;
        c.depth_under = under.depth;
        const double cross = over.page_tangent(0) * under.page_tangent(1) - over.page_tangent(1) * under.page_tangent(0);
        c.sign = cross > 0.0 ? 1 : -1;
        found.push_back(c);
      }
      scene.crossings.insert(scene.crossings.end(), found.begin(), found.end());
    }
  }
  return scene;
}

Eigen::MatrixXi crossing_counts(const ProjectionScene& scene) {
  const int m = static_cast<int>(scene.components.size());
  Eigen::MatrixXi out = Eigen::MatrixXi::Zero(m, m);
  for (const auto& c : scene.crossings) {
    ++out(c.over, c.under);
    ++out(c.under, c.over);
  }
  return out;
}

Eigen::MatrixXi signed_crossing_sums(const ProjectionScene& scene) {
  const int m = static_cast<int>(scene.components.size());
  Eigen::MatrixXi out = Eigen::MatrixXi::Zero(m, m);
  for (const auto& c : scene.crossings) {
    out(c.over, c.under) += c.sign;
    out(c.under, c.over) += c.sign;
  }
  return out;
}

}  // namespace gclink::cli
