#pragma once

#include <optional>
#include <utility>

#include <Eigen/Core>

#include "gclink/rational_angle.hpp"

namespace gclink {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Tolerance for floating-point equality/intersection decisions on untagged circles.
inline constexpr double kDefaultTolerance = 1e-9;
/// Frames further than this from orthonormal are rejected at construction.
inline constexpr double kFrameTolerance = 1e-6;

/// Records that a circle is g_{a,b}: it meets the z-axis in (±e^{ia}, 0) and the
/// w-axis in (0, ±e^{ib}).
struct AxisTag {
  RationalAngle z;
  RationalAngle w;
  friend bool operator==(const AxisTag&, const AxisTag&) = default;
};

/**
 * An oriented great circle of S³ ⊂ R⁴ ≅ C², γ(t) = u·cos t + v·sin t.
 *
 * Coordinates are (Re z, Im z, Re w, Im w). Circles built from axis angles carry
 * an AxisTag and have the frame ((cos a, sin a, 0, 0), (0, 0, cos b, sin b)).
 */
class GreatCircle {
 public:
  /// Throws InvalidInput if the frame is off orthonormal by more than kFrameTolerance.
  static GreatCircle from_frame(const Vec4& u, const Vec4& v);
  static GreatCircle from_axes(const RationalAngle& a, const RationalAngle& b);

  const Vec4& u() const { return u_; }
  const Vec4& v() const { return v_; }
  const std::optional<AxisTag>& axis_tag() const { return tag_; }

  Vec4 point(double t) const;
  /// Same point set, opposite orientation.
  GreatCircle reversed() const;
  /// Drops the exact tag, leaving only the frame.
  GreatCircle untagged() const { return GreatCircle(u_, v_, std::nullopt); }

 private:
  GreatCircle(const Vec4& u, const Vec4& v, std::optional<AxisTag> tag)
      : u_(u), v_(v), tag_(std::move(tag)) {}

  Vec4 u_;
  Vec4 v_;
  std::optional<AxisTag> tag_;
};

/// A pair of rotations acting on the z- and w-planes: (z, w) -> (e^{iα} z, e^{iβ} w).
struct BlockRotation {
  RationalAngle z;
  RationalAngle w;
};

/// Orientation-preserving isometry of R⁴, optionally with an exact block descriptor.
class Isometry {
 public:
  static Isometry identity();
  /// Throws InvalidInput unless MᵀM = I and det M = +1 within `tol`.
  static Isometry from_matrix(const Mat4& m, double tol = 1e-9);
  static Isometry block_rotation(const RationalAngle& z, const RationalAngle& w);

  const Mat4& matrix() const { return m_; }
  const std::optional<BlockRotation>& exact() const { return exact_; }

  /// (*this) ∘ other.
  Isometry operator*(const Isometry& other) const;
  Isometry power(long k) const;

 private:
  Isometry(const Mat4& m, std::optional<BlockRotation> exact) : m_(m), exact_(std::move(exact)) {}

  Mat4 m_;
  std::optional<BlockRotation> exact_;
};

/// φ_{p/q}: (z, w) -> (e^{2πi/q} z, e^{2πip/q} w). Requires q >= 1 and gcd(p, q) = 1.
Isometry phi_isometry(long p, long q);

GreatCircle apply_isometry(const Isometry& r, const GreatCircle& c);

/// Jordan angles 0 <= smaller <= larger <= π/2 between the defining 2-planes.
struct PrincipalAngles {
  double smaller;
  double larger;
};

/// Exact route when both circles are tagged, floating route otherwise.
PrincipalAngles principal_angles(const GreatCircle& c1, const GreatCircle& c2);
/// Floating route from the frames alone.
PrincipalAngles principal_angles_numeric(const GreatCircle& c1, const GreatCircle& c2);
/// Exact principal angles (smaller, larger) of two tagged circles.
std::optional<std::pair<RationalAngle, RationalAngle>> exact_principal_angles(const GreatCircle& c1,
                                                                             const GreatCircle& c2);

double circle_distance(const GreatCircle& c1, const GreatCircle& c2);
bool circles_equal(const GreatCircle& c1, const GreatCircle& c2, double tol = kDefaultTolerance);
bool circles_intersect(const GreatCircle& c1, const GreatCircle& c2, double tol = kDefaultTolerance);

/// det[u1 v1 u2 v2]; its magnitude is sin θ1 · sin θ2.
double linking_determinant(const GreatCircle& c1, const GreatCircle& c2);

/// ±1, the sign of det[u1 v1 u2 v2]. Throws NotDisjoint for intersecting or equal circles.
int linking_number(const GreatCircle& c1, const GreatCircle& c2, double tol = kDefaultTolerance);

/// Geodesic distance in S³ from a unit vector to the circle.
double point_circle_distance(const Vec4& x, const GreatCircle& c);

/// R ∈ SO(4) with R·u = e1 and R·v = e2. The last two rows are completed by
/// pivoted Gram–Schmidt over e1..e4 (largest residual first, ties to the lower
/// index) and the fourth row is negated if needed to make det R = +1.
Isometry move_to_standard(const GreatCircle& c);

/// Rotation whose leading rows are the given orthonormal columns, completed with
/// the pivoting rule of move_to_standard.
Mat4 complete_rotation(const Eigen::Matrix<double, 4, Eigen::Dynamic>& leading);

}  // namespace gclink
