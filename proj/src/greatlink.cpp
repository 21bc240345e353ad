#include "gclink/greatlink.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "gclink/errors.hpp"
#include "gclink/kernels.hpp"

namespace gclink {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::string pair_name(std::size_t i, std::size_t j) {
  return "components " + std::to_string(i) + " and " + std::to_string(j);
}

}  // namespace

std::string to_string(Orbit orbit) { return orbit == Orbit::Real ? "REAL" : "SHIFTED"; }

GreatCircleLink::GreatCircleLink(std::vector<GreatCircle> components, std::optional<Provenance> provenance,
                                 std::vector<OrbitLabel> labels)
    : components_(std::move(components)), provenance_(provenance), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != components_.size()) {
    throw InvalidInput("orbit labels must match the component count");
  }
}

bool GreatCircleLink::fully_tagged() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const GreatCircle& c) { return c.axis_tag().has_value(); });
}

std::vector<double> GreatCircleLink::frame_array() const {
  std::vector<double> out;
  out.reserve(8 * components_.size());
  for (const auto& c : components_) {
    for (int k = 0; k < 4; ++k) out.push_back(c.u()(k));
    for (int k = 0; k < 4; ++k) out.push_back(c.v()(k));
  }
  return out;
}

GreatCircleLink GreatCircleLink::transformed(const Isometry& r) const {
  std::vector<GreatCircle> moved;
  moved.reserve(components_.size());
  for (const auto& c : components_) moved.push_back(apply_isometry(r, c));
  return GreatCircleLink(std::move(moved), provenance_, labels_);
}

GreatCircleLink construct_dpq(std::int64_t p, std::int64_t q) {
  if (q < 2) throw InvalidInput("D_{p/q} needs q >= 2, got q = " + std::to_string(q));
  p = floor_mod(p, q);
  if (std::gcd(p, q) != 1) {
    throw InvalidInput("D_{p/q} needs gcd(p, q) = 1, got " + std::to_string(p) + "/" + std::to_string(q));
  }
  const Isometry phi = phi_isometry(p, q);

  std::vector<GreatCircle> components;
  std::vector<OrbitLabel> labels;
  auto add_orbit = [&](const GreatCircle& generator, Orbit orbit) {
    const std::size_t first = components.size();
    GreatCircle current = generator;
    for (std::int64_t k = 0; k < q; ++k) {
      bool seen = false;
      for (std::size_t i = first; i < components.size() && !seen; ++i) {
        seen = circles_equal(components[i], current);
      }
      if (!seen) {
        components.push_back(current);
        labels.push_back({orbit, static_cast<int>(k)});
      }
      current = apply_isometry(phi, current);
    }
  };

  add_orbit(GreatCircle::from_axes(RationalAngle(), RationalAngle()), Orbit::Real);
  if (q % 2 == 0) {
    add_orbit(GreatCircle::from_axes(RationalAngle(1, q), RationalAngle(p, q)), Orbit::Shifted);
  }
  return GreatCircleLink(std::move(components), Provenance{p, q}, std::move(labels));
}

std::vector<AxisHit> axis_intersections(const GreatCircleLink& link) {
  if (!link.provenance()) throw InvalidInput("axis_intersections needs a link with provenance (p, q)");
  const std::int64_t q = link.provenance()->q;
  std::vector<AxisHit> hits;
  for (std::size_t i = 0; i < link.size(); ++i) {
    const auto& tag = link.component(i).axis_tag();
    if (!tag) throw InvalidInput("axis_intersections: component " + std::to_string(i) + " is untagged");
    const auto k = tag->z.in_units_of(q);
    const auto l = tag->w.in_units_of(q);
    if (!k || !l) {
      throw InvalidInput("axis_intersections: component " + std::to_string(i) +
                         " does not meet the axes at multiples of pi/q");
    }
    hits.push_back({static_cast<int>(i), {*k, (*k + q) % (2 * q)}, {*l, (*l + q) % (2 * q)}});
  }
  return hits;
}

bool axis_pairing_holds(const GreatCircleLink& link) {
  const auto hits = axis_intersections(link);
  const std::int64_t p = link.provenance()->p;
  const std::int64_t q = link.provenance()->q;
  std::vector<int> z_count(2 * q, 0);
  std::vector<int> w_count(2 * q, 0);
  for (const auto& h : hits) {
    if (floor_mod(p * h.z[0] - h.w[0], 2 * q) != 0) return false;
    const std::int64_t image = floor_mod(p * h.z[1], 2 * q);
    if (image != h.w[0] && image != h.w[1]) return false;
    for (auto k : h.z) ++z_count[k];
    for (auto l : h.w) ++w_count[l];
  }
  auto once = [](const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [](int c) { return c == 1; }); };
  return once(z_count) && once(w_count);
}

std::vector<int> verify_invariance(const GreatCircleLink& link, const Isometry& r, double tol) {
  const std::size_t n = link.size();
  std::vector<int> sigma(n, -1);
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const GreatCircle image = apply_isometry(r, link.component(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (circles_equal(image, link.component(j), tol)) {
        sigma[i] = static_cast<int>(j);
        break;
      }
    }
    if (sigma[i] < 0) {
      throw NotInvariant("not invariant: image of component " + std::to_string(i) + " matches no component",
                         static_cast<int>(i));
    }
    if (hit[sigma[i]]) {
      throw NotInvariant("not invariant: two components map to component " + std::to_string(sigma[i]),
                         static_cast<int>(i));
    }
    hit[sigma[i]] = true;
  }
  return sigma;
}

std::vector<int> cycle_lengths(std::span<const int> permutation) {
  std::vector<int> lengths;
  std::vector<bool> visited(permutation.size(), false);
  for (std::size_t start = 0; start < permutation.size(); ++start) {
    if (visited[start]) continue;
    int length = 0;
    for (std::size_t i = start; !visited[i]; i = static_cast<std::size_t>(permutation[i])) {
      visited[i] = true;
      ++length;
    }
    lengths.push_back(length);
  }
  return lengths;
}

Eigen::MatrixXi linking_matrix(const GreatCircleLink& link, double tol) {
  const auto n = static_cast<Eigen::Index>(link.size());
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n, n);
  if (link.fully_tagged()) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        try {
          m(i, j) = m(j, i) = linking_number(link.component(i), link.component(j), tol);
        } catch (const NotDisjoint&) {
          throw NotDisjoint("circles not disjoint: " + pair_name(i, j), static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    return m;
  }
  const auto geometry = kernels::pairwise_geometry_omp(link.frame_array());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto& g = geometry[i * n + j];
      if (g.smaller_angle <= tol) {
        throw NotDisjoint("circles not disjoint: " + pair_name(i, j), static_cast<int>(i), static_cast<int>(j));
      }
      m(i, j) = m(j, i) = g.determinant > 0.0 ? 1 : -1;
    }
  }
  return m;
}

DisjointnessReport disjointness_report(const GreatCircleLink& link, double tol) {
  DisjointnessReport report{std::numeric_limits<double>::infinity(), -1, -1};
  const std::size_t n = link.size();
  std::vector<kernels::PairGeometry> geometry;
  if (!link.fully_tagged()) geometry = kernels::pairwise_geometry_omp(link.frame_array());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = geometry.empty() ? circle_distance(link.component(i), link.component(j))
                                        : geometry[i * n + j].smaller_angle;
      if (d < report.min_distance) report = {d, static_cast<int>(i), static_cast<int>(j)};
    }
  }
  if (report.first >= 0 && report.min_distance <= tol) {
    throw NotDisjoint("circles not disjoint: " + pair_name(report.first, report.second), report.first,
                      report.second);
  }
  return report;
}

}  // namespace gclink
