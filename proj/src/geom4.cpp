#include "gclink/geom4.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "gclink/errors.hpp"

namespace gclink {

namespace {

Mat4 block_matrix(const RationalAngle& z, const RationalAngle& w) {
  const CosSin a = z.cos_sin();
  const CosSin b = w.cos_sin();
  Mat4 m = Mat4::Zero();
  m(0, 0) = a.cos;
  m(0, 1) = -a.sin;
  m(1, 0) = a.sin;
  m(1, 1) = a.cos;
  m(2, 2) = b.cos;
  m(2, 3) = -b.sin;
  m(3, 2) = b.sin;
  m(3, 3) = b.cos;
  return m;
}

bool both_tagged(const GreatCircle& c1, const GreatCircle& c2) {
  return c1.axis_tag().has_value() && c2.axis_tag().has_value();
}

}  // namespace

// GreatCircle

GreatCircle GreatCircle::from_frame(const Vec4& u, const Vec4& v) {
  const double nu = std::abs(u.norm() - 1.0);
  const double nv = std::abs(v.norm() - 1.0);
  const double uv = std::abs(u.dot(v));
  if (!(nu <= kFrameTolerance && nv <= kFrameTolerance && uv <= kFrameTolerance)) {
    throw InvalidInput("great circle frame is not orthonormal (|u|-1=" + std::to_string(nu) +
                       ", |v|-1=" + std::to_string(nv) + ", <u,v>=" + std::to_string(uv) + ")");
  }
  return GreatCircle(u, v, std::nullopt);
}

GreatCircle GreatCircle::from_axes(const RationalAngle& a, const RationalAngle& b) {
  const CosSin ca = a.cos_sin();
  const CosSin cb = b.cos_sin();
  return GreatCircle(Vec4(ca.cos, ca.sin, 0.0, 0.0), Vec4(0.0, 0.0, cb.cos, cb.sin), AxisTag{a, b});
}

Vec4 GreatCircle::point(double t) const { return u_ * std::cos(t) + v_ * std::sin(t); }

GreatCircle GreatCircle::reversed() const {
  // (u, -v) spans the same plane; for g_{a,b} it is exactly g_{a, b+π}.
  if (tag_) return from_axes(tag_->z, tag_->w + RationalAngle(1, 1));
  return GreatCircle(u_, -v_, std::nullopt);
}

// Isometry

Isometry Isometry::identity() {
  return Isometry(Mat4::Identity(), BlockRotation{RationalAngle(), RationalAngle()});
}

Isometry Isometry::from_matrix(const Mat4& m, double tol) {
  const double orth = (m.transpose() * m - Mat4::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (!(orth <= tol && std::abs(det - 1.0) <= tol)) {
    throw InvalidInput("matrix is not a rotation (orthogonality residual " + std::to_string(orth) +
                       ", det " + std::to_string(det) + ")");
  }
  return Isometry(m, std::nullopt);
}

Isometry Isometry::block_rotation(const RationalAngle& z, const RationalAngle& w) {
  return Isometry(block_matrix(z, w), BlockRotation{z, w});
}

Isometry Isometry::operator*(const Isometry& other) const {
  if (exact_ && other.exact_) {
    return block_rotation(exact_->z + other.exact_->z, exact_->w + other.exact_->w);
  }
  return Isometry(m_ * other.m_, std::nullopt);
}

Isometry Isometry::power(long k) const {
  if (exact_) return block_rotation(exact_->z.scaled(k), exact_->w.scaled(k));
  Mat4 base = k < 0 ? Mat4(m_.transpose()) : m_;
  Mat4 acc = Mat4::Identity();
  for (long n = std::labs(k); n > 0; n >>= 1) {
    if (n & 1) acc = acc * base;
    base = base * base;
  }
  return Isometry(acc, std::nullopt);
}

Isometry phi_isometry(long p, long q) {
  if (q < 1) throw InvalidInput("phi_isometry: q must be >= 1, got " + std::to_string(q));
  if (std::gcd(p, q) != 1) {
    throw InvalidInput("phi_isometry: gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  return Isometry::block_rotation(RationalAngle(2, q), RationalAngle(2 * (p % q), q));
}

GreatCircle apply_isometry(const Isometry& r, const GreatCircle& c) {
  if (r.exact() && c.axis_tag()) {
    return GreatCircle::from_axes(c.axis_tag()->z + r.exact()->z, c.axis_tag()->w + r.exact()->w);
  }
  return GreatCircle::from_frame(r.matrix() * c.u(), r.matrix() * c.v());
}

// Principal angles

PrincipalAngles principal_angles_numeric(const GreatCircle& c1, const GreatCircle& c2) {
  Eigen::Matrix<double, 4, 2> a;
  a << c1.u(), c1.v();
  Eigen::Matrix<double, 4, 2> b;
  b << c2.u(), c2.v();
  const Eigen::Matrix2d gram = a.transpose() * b;
  const Eigen::Matrix<double, 4, 2> residual = b - a * gram;
  const Eigen::Vector2d cosines = Eigen::JacobiSVD<Eigen::Matrix2d>(gram).singularValues();
  const Eigen::Vector2d sines =
      Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>>(residual).singularValues();
  // Largest cosine pairs with smallest sine.
  PrincipalAngles out{std::atan2(sines(1), cosines(0)), std::atan2(sines(0), cosines(1))};
  if (out.smaller > out.larger) std::swap(out.smaller, out.larger);
  return out;
}

std::optional<std::pair<RationalAngle, RationalAngle>> exact_principal_angles(const GreatCircle& c1,
                                                                             const GreatCircle& c2) {
  if (!both_tagged(c1, c2)) return std::nullopt;
  RationalAngle dz = (c1.axis_tag()->z - c2.axis_tag()->z).distance_to_pi_multiple();
  RationalAngle dw = (c1.axis_tag()->w - c2.axis_tag()->w).distance_to_pi_multiple();
  if (dw < dz) std::swap(dz, dw);
  return std::pair{dz, dw};
}

PrincipalAngles principal_angles(const GreatCircle& c1, const GreatCircle& c2) {
  if (auto exact = exact_principal_angles(c1, c2)) {
    return {exact->first.radians(), exact->second.radians()};
  }
  return principal_angles_numeric(c1, c2);
}

double circle_distance(const GreatCircle& c1, const GreatCircle& c2) {
  return principal_angles(c1, c2).smaller;
}

bool circles_equal(const GreatCircle& c1, const GreatCircle& c2, double tol) {
  if (both_tagged(c1, c2)) {
    return c1.axis_tag()->z.congruent_mod_pi(c2.axis_tag()->z) &&
           c1.axis_tag()->w.congruent_mod_pi(c2.axis_tag()->w);
  }
  return principal_angles_numeric(c1, c2).larger <= tol;
}

bool circles_intersect(const GreatCircle& c1, const GreatCircle& c2, double tol) {
  if (both_tagged(c1, c2)) {
    const bool z = c1.axis_tag()->z.congruent_mod_pi(c2.axis_tag()->z);
    const bool w = c1.axis_tag()->w.congruent_mod_pi(c2.axis_tag()->w);
    return z != w;
  }
  const PrincipalAngles a = principal_angles_numeric(c1, c2);
  return a.smaller <= tol && a.larger > tol;
}

double linking_determinant(const GreatCircle& c1, const GreatCircle& c2) {
  Mat4 m;
  m << c1.u(), c1.v(), c2.u(), c2.v();
  return m.determinant();
}

int linking_number(const GreatCircle& c1, const GreatCircle& c2, double tol) {
  if (both_tagged(c1, c2)) {
    // det = -sin(a2 - a1)·sin(b2 - b1) for g_{a1,b1}, g_{a2,b2}.
    const int sz = (c2.axis_tag()->z - c1.axis_tag()->z).sin_sign();
    const int sw = (c2.axis_tag()->w - c1.axis_tag()->w).sin_sign();
    if (sz == 0 || sw == 0) throw NotDisjoint("circles not disjoint");
    return -sz * sw;
  }
  if (principal_angles_numeric(c1, c2).smaller <= tol) throw NotDisjoint("circles not disjoint");
  return linking_determinant(c1, c2) > 0.0 ? 1 : -1;
}

double point_circle_distance(const Vec4& x, const GreatCircle& c) {
  const double pu = x.dot(c.u());
  const double pv = x.dot(c.v());
  const Vec4 perp = x - pu * c.u() - pv * c.v();
  return std::atan2(perp.norm(), std::hypot(pu, pv));
}

// Frames

Mat4 complete_rotation(const Eigen::Matrix<double, 4, Eigen::Dynamic>& leading) {
  Mat4 r = Mat4::Zero();
  const int given = static_cast<int>(leading.cols());
  for (int i = 0; i < given; ++i) r.row(i) = leading.col(i).transpose();
  for (int row = given; row < 4; ++row) {
    Vec4 best = Vec4::Zero();
    double best_norm = -1.0;
    for (int e = 0; e < 4; ++e) {
      Vec4 residual = Vec4::Unit(e);
      for (int k = 0; k < row; ++k) residual -= r.row(k).dot(residual) * r.row(k).transpose();
      const double n = residual.norm();
      if (n > best_norm) {
        best_norm = n;
        best = residual;
      }
    }
    // One re-orthogonalisation pass keeps the completion orthonormal to 1e-15.
    for (int k = 0; k < row; ++k) best -= r.row(k).dot(best) * r.row(k).transpose();
    r.row(row) = best.normalized().transpose();
  }
  if (r.determinant() < 0.0) r.row(3) = -r.row(3);
  return r;
}

Isometry move_to_standard(const GreatCircle& c) {
  Eigen::Matrix<double, 4, 2> frame;
  frame << c.u(), c.v();
  // Rows are u and v verbatim; frames are only orthonormal to kFrameTolerance.
  return Isometry::from_matrix(complete_rotation(frame), 10 * kFrameTolerance);
}

}  // namespace gclink
