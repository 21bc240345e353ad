#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gclink/geom4.hpp"

namespace gclink {

/// Which generator a component of D_{p/q} comes from: g_{0,0} or g_{π/q, pπ/q}.
enum class Orbit { Real, Shifted };

struct OrbitLabel {
  Orbit orbit = Orbit::Real;
  int index = 0;  ///< k with component = φ^k(generator)
  friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
};

std::string to_string(Orbit orbit);

/// The (p, q) a link was generated from, normalised to 0 < p < q.
struct Provenance {
  std::int64_t p;
  std::int64_t q;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/**
 * A finite ordered set of great circles with optional provenance.
 *
 * Construction does not check disjointness; construct_dpq guarantees it and
 * disjointness_report / linking_matrix enforce it.
 */
class GreatCircleLink {
 public:
  explicit GreatCircleLink(std::vector<GreatCircle> components,
                           std::optional<Provenance> provenance = std::nullopt,
                           std::vector<OrbitLabel> labels = {});

  std::size_t size() const { return components_.size(); }
  const std::vector<GreatCircle>& components() const { return components_; }
  const GreatCircle& component(std::size_t i) const { return components_.at(i); }
  const std::optional<Provenance>& provenance() const { return provenance_; }
  /// Empty unless the link came from construct_dpq (or was deserialised with labels).
  const std::vector<OrbitLabel>& labels() const { return labels_; }

  /// True when every component carries an AxisTag.
  bool fully_tagged() const;
  /// Frames as 8 doubles per component, the layout the kernels expect.
  std::vector<double> frame_array() const;

  /// Applies `r` to every component, keeping provenance and labels.
  GreatCircleLink transformed(const Isometry& r) const;

 private:
  std::vector<GreatCircle> components_;
  std::optional<Provenance> provenance_;
  std::vector<OrbitLabel> labels_;
};

/**
 * The great circle link D_{p/q}.
 *
 * q odd: the q circles φ^k(g_{0,0}), k = 0..q-1. q even: the q/2 distinct circles
 * of the orbit of g_{0,0} followed by the q/2 of the orbit of g_{π/q, pπ/q}
 * (φ^{q/2} fixes each generator as a set). p is reduced mod q first. Throws
 * InvalidInput unless q >= 2, gcd(p, q) = 1 and p ≢ 0.
 */
GreatCircleLink construct_dpq(std::int64_t p, std::int64_t q);

/// Antipodal axis indices of one component, in units of π/q.
struct AxisHit {
  int component;
  std::array<std::int64_t, 2> z;  ///< k, k+q (mod 2q)
  std::array<std::int64_t, 2> w;  ///< l, l+q (mod 2q)
};

/// Requires provenance and exact tags (InvalidInput otherwise).
std::vector<AxisHit> axis_intersections(const GreatCircleLink& link);

/// l ≡ p·k (mod 2q) for each component's tagged pair and p·(k+q) ∈ {l, l+q};
/// the z and w indices must each cover 0..2q-1 exactly once.
bool axis_pairing_holds(const GreatCircleLink& link);

/// The permutation σ with r(component i) = component σ(i). Exact when `r` has a
/// block descriptor and all components are tagged. Throws NotInvariant.
std::vector<int> verify_invariance(const GreatCircleLink& link, const Isometry& r,
                                   double tol = kDefaultTolerance);

/// Cycle lengths of a permutation, in order of each cycle's smallest element.
std::vector<int> cycle_lengths(std::span<const int> permutation);

/// Symmetric matrix of pairwise linking numbers, zero diagonal. Throws
/// NotDisjoint naming the first intersecting pair.
Eigen::MatrixXi linking_matrix(const GreatCircleLink& link, double tol = kDefaultTolerance);

struct DisjointnessReport {
  double min_distance;
  int first;
  int second;
};

/// Smallest pairwise circle distance. Throws NotDisjoint if it is <= tol.
DisjointnessReport disjointness_report(const GreatCircleLink& link, double tol = kDefaultTolerance);

}  // namespace gclink
