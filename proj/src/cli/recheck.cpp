#include "gclink/cli/recheck.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "gclink/errors.hpp"

namespace gclink::cli {

namespace {

using V4 = std::array<double, 4>;
constexpr double kPi = std::numbers::pi;

struct Frame {
  V4 u;
  V4 v;
};

double dot(const V4& a, const V4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

double det3(double a, double b, double c, double d, double e, double f, double g, double h, double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

/// det of the matrix with the given columns, by cofactor expansion on the first row.
double det4(const V4& c0, const V4& c1, const V4& c2, const V4& c3) {
  const std::array<V4, 4> c{c0, c1, c2, c3};
  double total = 0.0;
  for (int j = 0; j < 4; ++j) {
    std::array<int, 3> cols{};
    for (int k = 0, m = 0; k < 4; ++k) {
      if (k != j) cols[m++] = k;
    }
    const double minor = det3(c[cols[0]][1], c[cols[1]][1], c[cols[2]][1], c[cols[0]][2], c[cols[1]][2],
                              c[cols[2]][2], c[cols[0]][3], c[cols[1]][3], c[cols[2]][3]);
    total += (j % 2 ? -1.0 : 1.0) * c[j][0] * minor;
  }
  return total;
}

/// Eigenvalues (small, large) of a symmetric 2×2 matrix.
std::pair<double, double> eig2(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), b);
  const double large = mean + r;
  const double det = a * d - b * b;
  return {large > 0.0 ? det / large : mean - r, large};
}

/// Smaller principal angle from cos = largest singular value of the frame Gram
/// matrix and sin² = det(I − GᵀG)/(1 − σ_min²) computed through the residual.
double smaller_angle(const Frame& a, const Frame& b) {
  const double g00 = dot(a.u, b.u), g01 = dot(a.u, b.v), g10 = dot(a.v, b.u), g11 = dot(a.v, b.v);
  const auto [s_small, s_large] = eig2(g00 * g00 + g10 * g10, g00 * g01 + g10 * g11, g01 * g01 + g11 * g11);
  (void)s_small;
  // Residual of b's frame after projecting onto a's plane.
  V4 ru{}, rv{};
  for (int k = 0; k < 4; ++k) {
    ru[k] = b.u[k] - g00 * a.u[k] - g10 * a.v[k];
    rv[k] = b.v[k] - g01 * a.u[k] - g11 * a.v[k];
  }
  const auto [r_small, r_large] = eig2(dot(ru, ru), dot(ru, rv), dot(rv, rv));
  (void)r_large;
  return std::atan2(std::sqrt(std::max(r_small, 0.0)), std::sqrt(std::max(s_large, 0.0)));
}

/// Planes equal: |det G| = 1.
bool same_plane(const Frame& a, const Frame& b, double tol) {
  const double g = dot(a.u, b.u) * dot(a.v, b.v) - dot(a.u, b.v) * dot(a.v, b.u);
  return std::fabs(std::fabs(g) - 1.0) < tol;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

double parse_number(const Json& j) {
  if (j.is_string()) return std::stod(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  throw InvalidInput("expected a number");
}

std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw InvalidInput("expected num/den, got " + s);
  return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

V4 parse_vec(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw InvalidInput("frame vectors need 4 entries");
  return {parse_number(j[0]), parse_number(j[1]), parse_number(j[2]), parse_number(j[3])};
}

/// Parameter where the circle meets the plane spanned by coordinates (i, i+1) of
/// the other factor, i.e. where the complementary pair vanishes.
std::optional<std::int64_t> axis_index(const Frame& f, int axis, std::int64_t q) {
  const int o = axis == 0 ? 2 : 0;  // coordinates that must vanish
  // Solve a·cos t + b·sin t = 0 for the 2-vectors a = u[o..o+1], b = v[o..o+1].
  const double a0 = f.u[o], a1 = f.u[o + 1], b0 = f.v[o], b1 = f.v[o + 1];
  const auto [small, large] = eig2(a0 * a0 + a1 * a1, a0 * b0 + a1 * b1, b0 * b0 + b1 * b1);
  (void)large;
  if (small > 1e-20) return std::nullopt;
  // Null direction of [[a0, b0], [a1, b1]].
  double c = b0, s = -a0;
  if (std::hypot(c, s) < std::hypot(b1, a1)) {
    c = b1;
    s = -a1;
  }
  const double n = std::hypot(c, s);
  c /= n;
  s /= n;
  const int a = axis == 0 ? 0 : 2;
  const double x = f.u[a] * c + f.v[a] * s;
  const double y = f.u[a + 1] * c + f.v[a + 1] * s;
  const double units = std::atan2(y, x) / (kPi / static_cast<double>(q));
  const double k = std::round(units);
  if (std::fabs(units - k) > 1e-8) return std::nullopt;
  return floor_mod(static_cast<std::int64_t>(k), 2 * q);
}

class Report {
 public:
  void add(const std::string& check, bool ok, const std::string& detail) { lines_.push_back({check, ok, detail}); }
  RecheckReport take() { return {std::move(lines_)}; }

 private:
  std::vector<RecheckLine> lines_;
};

}  // namespace

bool RecheckReport::passed() const {
  return !lines.empty() && std::all_of(lines.begin(), lines.end(), [](const RecheckLine& l) { return l.ok; });
}

RecheckReport recheck(const Json& doc) {
  if (!doc.is_object() || doc.value("schema", "") != kCertificateSchema) {
    throw InvalidInput(std::string("not a certificate document (expected schema ") + kCertificateSchema + ")");
  }
  Report rep;
  try {
    const std::int64_t p = doc.at("input").at("p").get<std::int64_t>();
    const std::int64_t q = doc.at("input").at("q").get<std::int64_t>();
    const double tol = parse_number(doc.at("input").at("tolerance"));
    if (q < 2 || p <= 0 || p >= q || std::gcd(p, q) != 1) throw InvalidInput("input fraction is not normalised");

    std::vector<Frame> frames;
    std::vector<std::optional<std::pair<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>>>> tags;
    for (const auto& c : doc.at("link").at("components")) {
      frames.push_back({parse_vec(c.at("u")), parse_vec(c.at("v"))});
      if (c.contains("axis_tag")) {
        tags.push_back(std::make_pair(parse_fraction(c["axis_tag"].at("z")), parse_fraction(c["axis_tag"].at("w"))));
      } else {
        tags.push_back(std::nullopt);
      }
    }
    const auto n = static_cast<int>(frames.size());
    rep.add("component_count", n == q, std::to_string(n) + " components for q = " + std::to_string(q));

    // Frames.
    double worst = 0.0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const auto& f = frames[i];
      worst = std::max({worst, std::fabs(dot(f.u, f.u) - 1.0), std::fabs(dot(f.v, f.v) - 1.0), std::fabs(dot(f.u, f.v))});
      if (tags[i]) {
        const auto [za, wa] = *tags[i];
        const double a = kPi * za.first / za.second, b = kPi * wa.first / wa.second;
        const V4 u{std::cos(a), std::sin(a), 0.0, 0.0}, v{0.0, 0.0, std::cos(b), std::sin(b)};
        for (int k = 0; k < 4; ++k) worst = std::max({worst, std::fabs(u[k] - f.u[k]), std::fabs(v[k] - f.v[k])});
      }
    }
    rep.add("frames", worst < 1e-12, "orthonormality and axis tag residual " + format_double(worst));

    // Disjointness and linking.
    double min_dist = std::numeric_limits<double>::infinity();
    bool linking_ok = true;
    const auto& lk = doc.at("linking_matrix");
    for (int i = 0; i < n; ++i) {
      if (lk.at(i).at(i).get<int>() != 0) linking_ok = false;
      for (int j = i + 1; j < n; ++j) {
        min_dist = std::min(min_dist, smaller_angle(frames[i], frames[j]));
        const double d = det4(frames[i].u, frames[i].v, frames[j].u, frames[j].v);
        const int sign = d > 0.0 ? 1 : -1;
        if (std::fabs(d) <= tol || lk.at(i).at(j).get<int>() != sign || lk.at(j).at(i).get<int>() != sign) {
          linking_ok = false;
        }
      }
    }
    const double claimed = parse_number(doc.at("disjointness").at("min_distance"));
    rep.add("disjointness", min_dist > tol && std::fabs(min_dist - claimed) < 1e-9,
            "min distance " + format_double(min_dist) + " (claimed " + format_double(claimed) + ")");
    rep.add("linking", linking_ok, "every off-diagonal entry is the sign of det[u_i v_i u_j v_j]");

    // Invariance under φ_{p/q}.
    const double az = 2.0 * kPi / q, aw = 2.0 * kPi * p / q;
    auto rotate = [&](const V4& x) {
      return V4{std::cos(az) * x[0] - std::sin(az) * x[1], std::sin(az) * x[0] + std::cos(az) * x[1],
                std::cos(aw) * x[2] - std::sin(aw) * x[3], std::sin(aw) * x[2] + std::cos(aw) * x[3]};
    };
    std::vector<int> perm(n, -1);
    for (int i = 0; i < n; ++i) {
      const Frame img{rotate(frames[i].u), rotate(frames[i].v)};
      for (int j = 0; j < n; ++j) {
        if (same_plane(img, frames[j], 1e-9)) {
          perm[i] = j;
          break;
        }
      }
    }
    const auto claimed_perm = doc.at("covering").at("invariance_permutation").get<std::vector<int>>();
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> iota(n);
    std::iota(iota.begin(), iota.end(), 0);
    rep.add("invariance", sorted == iota && perm == claimed_perm, "phi permutes the components as claimed");

    std::vector<int> cycles;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n && sorted == iota; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        ++len;
      }
      cycles.push_back(len);
    }
    const std::vector<int> expected_cycles =
        q % 2 ? std::vector<int>{static_cast<int>(q)} : std::vector<int>{static_cast<int>(q / 2), static_cast<int>(q / 2)};
    rep.add("orbit_structure",
            cycles == expected_cycles && doc.at("covering").at("cycle_lengths").get<std::vector<int>>() == cycles,
            q % 2 ? "one q-cycle" : "two (q/2)-cycles");

    // Axis pairing, recomputed from the frames.
    bool pairing_ok = true;
    std::vector<int> z_cover(2 * q, 0), w_cover(2 * q, 0);
    std::vector<std::int64_t> z_index(n, -1), w_index(n, -1);
    for (int i = 0; i < n; ++i) {
      const auto k = axis_index(frames[i], 0, q);
      const auto l = axis_index(frames[i], 1, q);
      if (!k || !l) {
        pairing_ok = false;
        continue;
      }
      z_index[i] = *k;
      w_index[i] = *l;
      const std::set<std::int64_t> zs{*k, (*k + q) % (2 * q)}, ws{*l, (*l + q) % (2 * q)};
      for (auto z : zs) {
        ++z_cover[z];
        if (!ws.count(floor_mod(p * z, 2 * q))) pairing_ok = false;
      }
      for (auto w : ws) ++w_cover[w];
      const auto& rec = doc.at("axis_pairing").at(i);
      const std::set<std::int64_t> rz{rec.at("z")[0].get<std::int64_t>(), rec.at("z")[1].get<std::int64_t>()};
      const std::set<std::int64_t> rw{rec.at("w")[0].get<std::int64_t>(), rec.at("w")[1].get<std::int64_t>()};
      if (rz != zs || rw != ws) pairing_ok = false;
    }
    const bool covered = std::all_of(z_cover.begin(), z_cover.end(), [](int c) { return c == 1; }) &&
                         std::all_of(w_cover.begin(), w_cover.end(), [](int c) { return c == 1; });
    rep.add("axis_pairing", pairing_ok && covered, "l = p k (mod 2q); each axis point used once");

    // Wedge arcs: for each wedge, the axis indices 0, 1, 2 and the other-axis
    // direction of the component through them.
    bool wedges_ok = true;
    std::int64_t p_inv = 1;
    while (floor_mod(p_inv * p, q) != 1 % q) ++p_inv;
    const auto& wedges = doc.at("covering").at("wedges");
    for (int wedge = 0; wedge < 2; ++wedge) {
      std::map<std::int64_t, std::int64_t> arcs;  // level -> rotation, units of π/q
      for (int i = 0; i < n; ++i) {
        if (z_index[i] < 0) continue;
        const std::int64_t own = wedge == 0 ? z_index[i] : w_index[i];
        const std::int64_t other = wedge == 0 ? w_index[i] : z_index[i];
        for (auto idx : {own, (own + q) % (2 * q)}) {
          if (idx <= 2) arcs[idx] = other % q;
        }
      }
      const auto& rec = wedges.at(wedge);
      if (arcs.size() != 3 || rec.at("arc_count").get<int>() != 3 || rec.at("arcs").size() != 3) {
        wedges_ok = false;
        continue;
      }
      for (const auto& arc : rec.at("arcs")) {
        const auto [ln, ld] = parse_fraction(arc.at("level").get<std::string>());
        const auto [rn, rd] = parse_fraction(arc.at("rotation").get<std::string>());
        if ((ln * q) % ld != 0 || (rn * q) % rd != 0) {
          wedges_ok = false;
          continue;
        }
        const std::int64_t level = ln * q / ld, rotation = rn * q / rd;
        const std::int64_t predicted = floor_mod((wedge == 0 ? p : p_inv) * level, q);
        if (!arcs.count(level) || arcs[level] != rotation || rotation != predicted) wedges_ok = false;
      }
    }
    rep.add("wedge_arcs", wedges_ok, "3 arcs per wedge at levels 0, pi/q, 2pi/q with the predicted rotations");

    // Free action of the cyclic group.
    bool free_ok = doc.at("covering").at("free_action").at("free").get<bool>();
    const auto& rows = doc.at("covering").at("free_action").at("rows");
    if (static_cast<std::int64_t>(rows.size()) != q - 1) free_ok = false;
    for (std::int64_t k = 1; k < q && free_ok; ++k) {
      const auto& r = rows.at(k - 1);
      const std::int64_t zr = k % q, wr = floor_mod(k * p, q);
      if (r.at(0).get<std::int64_t>() != k || r.at(1).get<std::int64_t>() != zr || r.at(2).get<std::int64_t>() != wr ||
          zr == 0 || wr == 0) {
        free_ok = false;
      }
    }
    rep.add("free_action", free_ok, "phi^k fixes no point for 0 < k < q");

    const auto& deg = doc.at("covering").at("degrees");
    rep.add("degree",
            deg.at("cyclic").get<std::int64_t>() == q && deg.at("branched").get<std::int64_t>() == 2 &&
                deg.at("total").get<std::int64_t>() == 2 * q,
            "cyclic q, branched 2, total 2q = " + std::to_string(2 * q));

    // Fibrations from each base.
    bool fib_ok = static_cast<int>(doc.at("fibrations").size()) == n;
    double sample_err = 0.0;
    for (const auto& f : doc.at("fibrations")) {
      const int b = f.at("base").get<int>();
      if (b < 0 || b >= n || f.at("fiber_punctures").get<int>() != n - 1 ||
          f.at("fiber_euler_characteristic").get<int>() != 2 - n || static_cast<int>(f.at("records").size()) != n - 1) {
        fib_ok = false;
        continue;
      }
      const Frame& base = frames[b];
      // Oriented complement (f3, f4) with det[u v f3 f4] = +1, by Gram–Schmidt on e1..e4.
      std::vector<V4> comp;
      for (int e = 0; e < 4 && comp.size() < 2; ++e) {
        V4 x{};
        x[e] = 1.0;
        for (const V4* y : {&base.u, &base.v}) {
          const double d = dot(x, *y);
          for (int k = 0; k < 4; ++k) x[k] -= d * (*y)[k];
        }
        for (const auto& y : comp) {
          const double d = dot(x, y);
          for (int k = 0; k < 4; ++k) x[k] -= d * y[k];
        }
        const double nx = std::sqrt(dot(x, x));
        if (nx < 0.5) continue;
        for (auto& xk : x) xk /= nx;
        comp.push_back(x);
      }
      if (comp.size() != 2) {
        fib_ok = false;
        continue;
      }
      if (det4(base.u, base.v, comp[0], comp[1]) < 0.0) {
        for (auto& xk : comp[1]) xk = -xk;
      }
      for (const auto& r : f.at("records")) {
        const int c = r.at("component").get<int>();
        if (c < 0 || c >= n || c == b) {
          fib_ok = false;
          continue;
        }
        const double a_re = dot(frames[c].u, comp[0]), a_im = dot(frames[c].u, comp[1]);
        const double b_re = dot(frames[c].v, comp[0]), b_im = dot(frames[c].v, comp[1]);
        const double rate = a_re * b_im - a_im * b_re;
        const auto [clear, big] = eig2(a_re * a_re + a_im * a_im, a_re * b_re + a_im * b_im, b_re * b_re + b_im * b_im);
        (void)big;
        const int sign = rate > 0.0 ? 1 : -1;
        if (std::fabs(rate) <= tol || clear <= tol * tol || sign != r.at("winding_sign").get<int>() ||
            sign != lk.at(b).at(c).get<int>() || std::fabs(rate - parse_number(r.at("winding_rate"))) > 1e-9 ||
            std::fabs(clear - parse_number(r.at("clearance"))) > 1e-9) {
          fib_ok = false;
        }
        // Sampled argument of w(t).
        const int m = doc.at("input").value("winding_samples", 1000);
        double total = 0.0, prev = 0.0;
        bool monotone = true;
        for (int k = 0; k <= m; ++k) {
          const double t = 2.0 * kPi * k / m;
          const double wr = a_re * std::cos(t) + b_re * std::sin(t);
          const double wi = a_im * std::cos(t) + b_im * std::sin(t);
          const double arg = std::atan2(wi, wr);
          if (k > 0) {
            double d = arg - prev;
            if (d > kPi) d -= 2.0 * kPi;
            if (d < -kPi) d += 2.0 * kPi;
            if (d * sign <= 0.0) monotone = false;
            total += d;
          }
          prev = arg;
        }
        sample_err = std::max(sample_err, std::fabs(total - 2.0 * kPi * sign));
        if (!monotone || !r.at("sampled_monotone").get<bool>()) fib_ok = false;
      }
    }
    rep.add("fibration", fib_ok && sample_err < 1e-6,
            "every base: nonzero winding, positive clearance, fiber punctures q-1; max sampled winding error " +
                format_double(sample_err));

    // Verdict.
    const auto& v = doc.at("verdict");
    const std::string status = v.at("status").get<std::string>();
    bool verdict_ok = false;
    if (status == "FIBERED" && v.contains("expansion")) {
      // Innermost-first evaluation with integers.
      std::int64_t num = 0, den = 1;
      const auto signs = v["expansion"].at("signs").get<std::vector<int>>();
      for (auto it = signs.rbegin(); it != signs.rend(); ++it) {
        // 1 / (2s + num/den) = den / (2s·den + num)
        const std::int64_t nn = den, nd = 2 * *it * den + num;
        num = nd < 0 ? -nn : nn;
        den = nd < 0 ? -nd : nd;
      }
      const auto [mp, mq] = parse_fraction(v["expansion"].at("member").get<std::string>());
      const bool equivalent =
          mq == q && (floor_mod(mp - p, q) == 0 || floor_mod(mp + p, q) == 0 || floor_mod(mp * p - 1, q) == 0 ||
                      floor_mod(mp * p + 1, q) == 0);
      const std::int64_t g = std::gcd(num, den);
      verdict_ok = !signs.empty() && g != 0 && num / g == mp && den / g == mq && equivalent;
    } else if (status == "VIRTUALLY_FIBERED" && v.contains("cover")) {
      verdict_ok = v["cover"].at("degree").get<std::int64_t>() == 2 * q &&
                   v["cover"].at("name").get<std::string>() == "D_{" + std::to_string(p) + "/" + std::to_string(q) + "}";
    }
    rep.add("verdict", verdict_ok, status);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(std::string("malformed number in certificate: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw InvalidInput(std::string("number out of range in certificate: ") + e.what());
  }
  return rep.take();
}

}  // namespace gclink::cli
