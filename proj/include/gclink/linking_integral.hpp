#pragma once

#include <optional>

#include "gclink/geom4.hpp"
#include "gclink/kernels.hpp"

namespace gclink {

/// Orientation-preserving chart S³ \ {pole} -> R³: x -> (Rx)_{0..2} / (1 - (Rx)_3)
/// with R ∈ SO(4) and R·pole = e4.
struct StereographicChart {
  Vec4 pole;
  Mat4 rotation;

  static StereographicChart from_pole(const Vec4& pole);
  Eigen::Vector3d project(const Vec4& x) const;
  /// Pushes the tangent vector dx at x forward to R³.
  Eigen::Vector3d push_tangent(const Vec4& x, const Vec4& dx) const;
};

/// Deterministic pole far from both circles: the 24-cell vertex maximising the
/// smaller of the two point-to-circle distances.
Vec4 default_pole(const GreatCircle& c1, const GreatCircle& c2);

struct GaussLinkingOptions {
  int samples = 4096;
  /// Projection pole; replaced by default_pole when absent and nudged off the
  /// circles when closer than 1e-6 to either.
  std::optional<Vec4> pole;
  bool parallel = true;
};

/**
 * Numerical Gauss linking integral of two disjoint great circles.
 *
 * Both circles are pushed to R³ by stereographic projection and the double
 * integral (1/4π)∮∮ (r1 − r2)·(dr1 × dr2)/|r1 − r2|³ is evaluated with the
 * periodic trapezoid rule. Each circle is reparametrised by
 * t = t* + atan2(ρ sin s, cos s), ρ = min(1, √θ1), which clusters samples at the
 * closest-approach points t* (and their antipodes) so nearly touching circles
 * still converge. Throws NotDisjoint for intersecting or equal circles and
 * InvalidInput for samples < 64.
 */
double gauss_linking_integral(const GreatCircle& c1, const GreatCircle& c2,
                              const GaussLinkingOptions& options = {});
double gauss_linking_integral(const GreatCircle& c1, const GreatCircle& c2, int samples);

/// Samples of `c` in the chart at s_k = (k + ½)·2π/n, tangents weighted by dt/ds.
kernels::CurveSamples sample_in_chart(const GreatCircle& c, const StereographicChart& chart, int n,
                                      double center, double rho);

}  // namespace gclink
