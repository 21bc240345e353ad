#include "gclink/covering.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <utility>

#include "gclink/errors.hpp"

namespace gclink {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  // Extended Euclid; caller guarantees gcd(a, m) = 1.
  std::int64_t r0 = m, r1 = floor_mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - k * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - k * s1};
  }
  return floor_mod(s0, m);
}

}  // namespace

std::string to_string(Wedge wedge) { return wedge == Wedge::Z ? "Z" : "W"; }

std::string to_string(OrbitStructure s) {
  return s == OrbitStructure::SingleCycle ? "one q-cycle" : "two (q/2)-cycles";
}

FreeActionWitness verify_free_action(std::int64_t p, std::int64_t q) {
  if (q < 1) throw InvalidInput("verify_free_action: q must be >= 1, got " + std::to_string(q));
  FreeActionWitness w;
  w.coprime = std::gcd(floor_mod(p, q), q) == 1;
  for (std::int64_t k = 1; k < q; ++k) {
    FreeActionRow row{k, k % q, floor_mod(k * p, q)};
    if (!w.fixing_power) {
      if (row.w_residue == 0) {
        w.fixing_power = k;
        w.fixed_set = "phi^" + std::to_string(k) + " fixes the w-axis circle";
      } else if (row.z_residue == 0) {
        w.fixing_power = k;
        w.fixed_set = "phi^" + std::to_string(k) + " fixes the z-axis circle";
      }
    }
    w.rows.push_back(row);
  }
  w.free = !w.fixing_power.has_value();
  return w;
}

std::vector<RationalAngle> WedgeArcReport::levels() const {
  std::vector<RationalAngle> out;
  for (const auto& a : arcs) out.push_back(a.level);
  return out;
}

std::vector<RationalAngle> WedgeArcReport::rotations() const {
  std::vector<RationalAngle> out;
  for (const auto& a : arcs) out.push_back(a.rotation);
  return out;
}

WedgeArcReport wedge_arc_report(const GreatCircleLink& link, Wedge wedge) {
  const auto hits = axis_intersections(link);
  const std::int64_t q = link.provenance()->q;
  WedgeArcReport report;
  report.wedge = wedge;
  for (const auto& h : hits) {
    const auto& axis = wedge == Wedge::Z ? h.z : h.w;
    const auto& other = wedge == Wedge::Z ? h.w : h.z;
    const OrbitLabel label = link.labels().empty() ? OrbitLabel{Orbit::Real, h.component}
                                                   : link.labels()[h.component];
    for (int side = 0; side < 2; ++side) {
      if (axis[side] > 2) continue;
      report.arcs.push_back({RationalAngle(axis[side], q), RationalAngle(other[0] % q, q), h.component, label,
                             RationalAngle(side, 1)});
    }
  }
  std::sort(report.arcs.begin(), report.arcs.end(),
            [](const WedgeArc& a, const WedgeArc& b) { return a.level < b.level; });
  report.arc_count = static_cast<int>(report.arcs.size());
  return report;
}

WedgeArcReport wedge_arc_report(std::int64_t p, std::int64_t q, Wedge wedge) {
  return wedge_arc_report(construct_dpq(p, q), wedge);
}

CoveringCertificate covering_certificate(std::int64_t p, std::int64_t q) {
  if (q == 0) {
    if (p == 1 || p == -1) throw OutOfScope("1/0 is the trivial two component link; it is excluded");
    throw InvalidInput("gcd(" + std::to_string(p) + ", 0) != 1");
  }
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q < 2) throw InvalidInput("q must be >= 2 (p/1 is the unknot)");
  p = floor_mod(p, q);
  if (std::gcd(p, q) != 1) {
    throw InvalidInput("gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }

  CoveringCertificate cert;
  cert.source = {p, q};

  cert.free_action = verify_free_action(p, q);
  if (!cert.free_action.free) throw CertificateFailed("free_action", "action is not free: " + cert.free_action.fixed_set);

  const GreatCircleLink link = construct_dpq(p, q);
  if (static_cast<std::int64_t>(link.size()) != q) {
    throw CertificateFailed("component_count", "D_{p/q} has " + std::to_string(link.size()) + " components");
  }
  try {
    disjointness_report(link);
  } catch (const NotDisjoint& e) {
    throw CertificateFailed("disjointness", e.what());
  }

  try {
    cert.invariance_permutation = verify_invariance(link, phi_isometry(p, q));
  } catch (const NotInvariant& e) {
    throw CertificateFailed("invariance", e.what());
  }
  cert.cycle_lengths = cycle_lengths(cert.invariance_permutation);
  const bool odd = q % 2 == 1;
  cert.orbit_structure = odd ? OrbitStructure::SingleCycle : OrbitStructure::TwoHalfCycles;
  const std::vector<int> expected_cycles =
      odd ? std::vector<int>{static_cast<int>(q)} : std::vector<int>{static_cast<int>(q / 2), static_cast<int>(q / 2)};
  if (cert.cycle_lengths != expected_cycles) {
    throw CertificateFailed("orbit_structure", "phi_{p/q} permutes D_{p/q} with unexpected cycle structure");
  }
  for (std::size_t i = 0; i < link.size(); ++i) {
    if (link.labels()[i].orbit != link.labels()[cert.invariance_permutation[i]].orbit) {
      throw CertificateFailed("orbit_structure", "phi_{p/q} mixes the two orbits");
    }
  }

  cert.axis_pairing_verified = axis_pairing_holds(link);
  if (!cert.axis_pairing_verified) throw CertificateFailed("axis_pairing", "l = p k (mod 2q) fails");

  const std::int64_t p_inverse = inverse_mod(p, q);
  for (Wedge wedge : {Wedge::Z, Wedge::W}) {
    WedgeArcReport report = wedge_arc_report(link, wedge);
    bool ok = report.arc_count == 3;
    for (std::int64_t level = 0; ok && level < 3; ++level) {
      const WedgeArc& arc = report.arcs[level];
      const std::int64_t rotation = wedge == Wedge::Z ? floor_mod(p * level, q) : floor_mod(p_inverse * level, q);
      ok = arc.level == RationalAngle(level, q) && arc.rotation == RationalAngle(rotation, q);
    }
    if (ok && !odd && wedge == Wedge::Z) ok = report.arcs[1].label.orbit == Orbit::Shifted;
    if (!ok) throw CertificateFailed("wedge_arcs", to_string(wedge) + "-wedge arc pattern does not match");
    cert.wedge_reports[wedge == Wedge::Z ? 0 : 1] = std::move(report);
  }

  cert.intermediate_quotient = {q, p};
  cert.cyclic_degree = q;
  cert.branched_degree = 2;
  cert.total_degree = cert.cyclic_degree * cert.branched_degree;
  return cert;
}

}  // namespace gclink
