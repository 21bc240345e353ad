#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gclink/greatlink.hpp"
#include "gclink/rational_angle.hpp"

namespace gclink {

/// The lens space L(q, p), quotient of S³ by φ_{p/q}.
struct LensSpaceData {
  std::int64_t q = 1;
  std::int64_t p = 0;
  std::string name() const { return "L(" + std::to_string(q) + "," + std::to_string(p) + ")"; }
};

/// One row of the symbolic fixed-point check for φ^k.
struct FreeActionRow {
  std::int64_t k;
  std::int64_t z_residue;  ///< k mod q; φ^k fixes the z-axis circle iff 0
  std::int64_t w_residue;  ///< k·p mod q; φ^k fixes the w-axis circle iff 0
};

struct FreeActionWitness {
  bool free = false;
  bool coprime = false;
  std::vector<FreeActionRow> rows;
  /// First power with a fixed circle, when the action is not free.
  std::optional<std::int64_t> fixing_power;
  std::string fixed_set;  ///< e.g. "phi^2 fixes the w-axis circle"
};

/// φ^k (0 < k < q) fixes a point only on the w-axis (kp ≡ 0) or the z-axis
/// (k ≡ 0 mod q). Non-coprime input is reported, not thrown. Throws InvalidInput
/// for q < 1.
FreeActionWitness verify_free_action(std::int64_t p, std::int64_t q);

enum class Wedge { Z, W };
std::string to_string(Wedge wedge);

struct WedgeArc {
  RationalAngle level;     ///< arg of the axis coordinate along the arc
  RationalAngle rotation;  ///< direction of the arc in the other coordinate, mod π
  int component;
  OrbitLabel label;
  RationalAngle center;  ///< parameter t at the arc's axis point (0 or π)
};

struct WedgeArcReport {
  Wedge wedge = Wedge::Z;
  int arc_count = 0;
  std::vector<WedgeArc> arcs;  ///< ordered by level

  std::vector<RationalAngle> levels() const;
  std::vector<RationalAngle> rotations() const;
};

/**
 * Arcs of D_{p/q} in the closed z-wedge {arg z ∈ [0, 2π/q], |w| <= √2/2} or the
 * w-wedge (roles of z and w swapped).
 *
 * On g_{a,b} the condition |w| <= √2/2 selects the two arcs |t| <= π/4 and
 * |t − π| <= π/4, along which arg z is a and a + π; so each axis index of a
 * component that lands in {0, 1, 2} (units of π/q) is one connected arc.
 */
WedgeArcReport wedge_arc_report(const GreatCircleLink& link, Wedge wedge);
WedgeArcReport wedge_arc_report(std::int64_t p, std::int64_t q, Wedge wedge);

enum class OrbitStructure { SingleCycle, TwoHalfCycles };
std::string to_string(OrbitStructure s);

struct CoveringCertificate {
  Provenance source{};
  FreeActionWitness free_action;
  std::vector<int> invariance_permutation;
  std::vector<int> cycle_lengths;
  OrbitStructure orbit_structure = OrbitStructure::SingleCycle;
  bool axis_pairing_verified = false;
  std::array<WedgeArcReport, 2> wedge_reports;
  LensSpaceData intermediate_quotient;
  std::int64_t cyclic_degree = 0;    ///< q, S³ − D -> L − K̃
  std::int64_t branched_degree = 2;  ///< L − K̃ -> S³ − K
  std::int64_t total_degree = 0;     ///< 2q
};

/// Runs every sub-check for D_{p/q}. Throws OutOfScope for 1/0, InvalidInput for
/// q < 2 or gcd(p, q) != 1, and CertificateFailed naming the failed check.
CoveringCertificate covering_certificate(std::int64_t p, std::int64_t q);

}  // namespace gclink
