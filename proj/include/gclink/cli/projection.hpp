#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "gclink/greatlink.hpp"
#include "gclink/linking_integral.hpp"

namespace gclink::cli {

/// Pole (cos ψ cos η, sin ψ cos η, cos χ sin η, sin χ sin η): near the z-axis
/// circle, tilted by η toward the w-plane.
struct PoleAngles {
  double psi = 0.4142135623730951;
  double chi = 1.7320508075688772;
  double eta = 0.35;

  Vec4 pole() const;
};

struct ProjectionOptions {
  int samples = 400;  ///< per component, before adaptive refinement
  PoleAngles pole{};
  bool parallel = true;
};

/// A closed curve in the page; the last point joins back to the first.
struct ProjectedCurve {
  std::vector<double> t;      ///< increasing parameters in [0, 2π)
  std::vector<double> xy;     ///< page coordinates, interleaved
  std::vector<double> depth;  ///< toward the viewer
  std::size_t size() const { return t.size(); }
};

struct Crossing {
  double x = 0.0;
  double y = 0.0;
  int over = 0;
  int under = 0;
  double t_over = 0.0;
  double t_under = 0.0;
  double depth_over = 0.0;
  double depth_under = 0.0;
  int sign = 0;  ///< right-handed crossings are +1
};

struct ProjectionScene {
  PoleAngles pole;
  StereographicChart chart;
  int samples = 0;
  std::vector<ProjectedCurve> components;
  ProjectedCurve w_axis;  ///< drawn dotted
  std::vector<Crossing> crossings;
  std::vector<std::string> warnings;
};

/// Chart with rows (depth, page x, page y, pole) and determinant +1.
StereographicChart projection_chart(const PoleAngles& pole);

/**
 * Standard projection: stereographic projection from the pole, then
 * orthographic projection along the depth axis, which is the tangent of the
 * z-axis circle near the pole.
 *
 * A pole within 1e-3 of a component is moved along ψ with a warning. Crossings
 * are located on the sampled polylines and refined by Newton's method on the
 * exact curves; a refined crossing with depth gap below 1e-6 is an error.
 * Throws InvalidInput for samples < 100 and NotDisjoint for intersecting
 * components.
 */
ProjectionScene render_projection(const GreatCircleLink& link, const ProjectionOptions& options = {});

/// Number of crossings between each pair of components.
Eigen::MatrixXi crossing_counts(const ProjectionScene& scene);
/// Sum of crossing signs between each pair; half of it is the linking number.
Eigen::MatrixXi signed_crossing_sums(const ProjectionScene& scene);

}  // namespace gclink::cli
