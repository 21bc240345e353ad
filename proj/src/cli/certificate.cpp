#include "gclink/cli/certificate.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gclink/errors.hpp"
#include "gclink/version.hpp"

namespace gclink::cli {

namespace {

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

Json vec4_json(const Vec4& v) {
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) out.push_back(format_double(v(i)));
  return out;
}

Json label_json(const OrbitLabel& label) {
  return Json{{"orbit", to_string(label.orbit)}, {"orbit_index", label.index}};
}

Json link_json(const GreatCircleLink& link) {
  Json comps = Json::array();
  for (std::size_t i = 0; i < link.size(); ++i) {
    const GreatCircle& c = link.component(i);
    Json entry{{"index", i}};
    if (!link.labels().empty()) {
      entry["orbit"] = to_string(link.labels()[i].orbit);
      entry["orbit_index"] = link.labels()[i].index;
    }
    if (c.axis_tag()) entry["axis_tag"] = Json{{"z", c.axis_tag()->z.to_string()}, {"w", c.axis_tag()->w.to_string()}};
    entry["u"] = vec4_json(c.u());
    entry["v"] = vec4_json(c.v());
    comps.push_back(std::move(entry));
  }
  Json out;
  if (link.provenance()) out["provenance"] = Json{{"p", link.provenance()->p}, {"q", link.provenance()->q}};
  out["components"] = std::move(comps);
  return out;
}

Json wedge_json(const WedgeArcReport& report) {
  Json arcs = Json::array();
  for (const auto& arc : report.arcs) {
    arcs.push_back(Json{{"level", arc.level.to_string()},
                        {"rotation", arc.rotation.to_string()},
                        {"component", arc.component},
                        {"label", label_json(arc.label)},
                        {"center", arc.center.to_string()}});
  }
  return Json{{"wedge", to_string(report.wedge)}, {"arc_count", report.arc_count}, {"arcs", std::move(arcs)}};
}

Json covering_json(const CoveringCertificate& c) {
  Json rows = Json::array();
  for (const auto& r : c.free_action.rows) rows.push_back(Json::array({r.k, r.z_residue, r.w_residue}));
  Json free{{"free", c.free_action.free}, {"coprime", c.free_action.coprime}, {"rows", std::move(rows)}};
  if (c.free_action.fixing_power) free["fixed_set"] = c.free_action.fixed_set;
  const auto q = c.source.q;
  return Json{{"source", Json{{"p", c.source.p}, {"q", q}}},
              {"isometry", Json{{"z", RationalAngle(2, q).to_string()}, {"w", RationalAngle(2 * c.source.p, q).to_string()}}},
              {"free_action", std::move(free)},
              {"invariance_permutation", c.invariance_permutation},
              {"cycle_lengths", c.cycle_lengths},
              {"orbit_structure", to_string(c.orbit_structure)},
              {"axis_pairing_verified", c.axis_pairing_verified},
              {"wedges", Json::array({wedge_json(c.wedge_reports[0]), wedge_json(c.wedge_reports[1])})},
              {"intermediate_quotient", c.intermediate_quotient.name()},
              {"degrees", Json{{"cyclic", c.cyclic_degree}, {"branched", c.branched_degree}, {"total", c.total_degree}}}};
}

Json fibration_json(const FibrationCertificate& f, const std::vector<kernels::WindingSample>& sampled) {
  Json records = Json::array();
  for (std::size_t i = 0; i < f.records.size(); ++i) {
    const auto& r = f.records[i];
    Json entry{{"component", r.component},
               {"winding_rate", format_double(r.winding_rate)},
               {"clearance", format_double(r.clearance)},
               {"winding_sign", r.winding_sign}};
    if (i < sampled.size()) {
      entry["sampled_monotone"] = sampled[i].strictly_monotone;
      entry["sampled_total"] = format_double(sampled[i].total);
    }
    records.push_back(std::move(entry));
  }
  return Json{{"base", f.base_index},
              {"fiber_punctures", f.fiber_punctures},
              {"fiber_euler_characteristic", f.fiber_euler_characteristic},
              {"records", std::move(records)}};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_rational(const Rational& r) {
  std::ostringstream out;
  out << numerator(r) << "/" << denominator(r);
  return out.str();
}

CertificateDocument certify(const TwoBridgeFraction& fraction, const CertifyOptions& options) {
  if (fraction.is_trivial_link()) throw OutOfScope("1/0 is the trivial two component link; it is excluded");
  Stopwatch clock;
  CertificateDocument doc;
  doc.fraction = fraction;
  doc.options = options;

  doc.link = construct_dpq(fraction.p(), fraction.q());
  doc.timings_ms.emplace_back("construct", clock.lap_ms());

  doc.covering = covering_certificate(fraction.p(), fraction.q());
  doc.axis_pairing = axis_intersections(doc.link);
  doc.timings_ms.emplace_back("covering", clock.lap_ms());

  doc.disjointness = disjointness_report(doc.link, options.tolerance);
  doc.linking = linking_matrix(doc.link, options.tolerance);
  doc.timings_ms.emplace_back("linking", clock.lap_ms());

  doc.fibrations = all_fibrations(doc.link, options.tolerance);
  doc.sampled.resize(doc.fibrations.size());
  for (const auto& f : doc.fibrations) {
    std::vector<kernels::WindingInput> inputs;
    for (const auto& r : f.records) inputs.push_back(winding_input(doc.link, f.base_index, r.component));
    auto samples = kernels::sampled_winding_omp(inputs, options.winding_samples);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      const double expected = 2.0 * std::numbers::pi * f.records[i].winding_sign;
      if (!s.strictly_monotone || std::fabs(s.total - expected) > 1e-6) {
        throw CertificateFailed("sampled_winding", "component " + std::to_string(f.records[i].component) +
                                                       " does not wind once around base " +
                                                       std::to_string(f.base_index));
      }
      if (f.records[i].winding_sign != doc.linking(f.base_index, f.records[i].component)) {
        throw CertificateFailed("winding", "winding sign disagrees with the linking number");
      }
    }
    doc.sampled[f.base_index] = std::move(samples);
  }
  doc.timings_ms.emplace_back("fibration", clock.lap_ms());

  doc.verdict = twobridge::verdict(fraction, options.max_depth);
  doc.timings_ms.emplace_back("verdict", clock.lap_ms());
  return doc;
}

Json to_json(const VirtualFibrationVerdict& v) {
  Json out{{"input", v.input}, {"status", to_string(v.status)}, {"evidence", v.evidence}};
  if (v.expansion) {
    Json signs = Json::array();
    for (int s : v.expansion->expansion.signs) signs.push_back(s);
    out["expansion"] = Json{{"member", v.expansion->member.to_string()},
                            {"signs", std::move(signs)},
                            {"value", format_rational(v.expansion->expansion.value())},
                            {"display", v.expansion->expansion.to_string()}};
  }
  if (!v.cover_name.empty()) {
    out["cover"] = Json{{"name", v.cover_name}, {"degree", v.cover_degree}};
    if (v.cover) out["cover"]["intermediate_quotient"] = v.cover->intermediate_quotient.name();
  }
  Json meta = Json::object();
  for (const auto& [k, val] : v.metadata) meta[k] = val;
  out["metadata"] = std::move(meta);
  return out;
}

Json to_json(const CertificateDocument& doc) {
  Json out;
  out["schema"] = kCertificateSchema;
  out["tool"] = Json{{"name", "gclink"}, {"version", kVersion}};
  out["input"] = Json{{"fraction", doc.fraction.to_string()},
                      {"p", doc.fraction.p()},
                      {"q", doc.fraction.q()},
                      {"kind", doc.fraction.is_knot() ? "knot" : "link"},
                      {"tolerance", format_double(doc.options.tolerance)},
                      {"winding_samples", doc.options.winding_samples}};
  out["link"] = link_json(doc.link);
  out["covering"] = covering_json(doc.covering);
  Json fibs = Json::array();
  for (std::size_t b = 0; b < doc.fibrations.size(); ++b) fibs.push_back(fibration_json(doc.fibrations[b], doc.sampled[b]));
  out["fibrations"] = std::move(fibs);
  Json lk = Json::array();
  for (Eigen::Index i = 0; i < doc.linking.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < doc.linking.cols(); ++j) row.push_back(doc.linking(i, j));
    lk.push_back(std::move(row));
  }
  out["linking_matrix"] = std::move(lk);
  out["disjointness"] = Json{{"min_distance", format_double(doc.disjointness.min_distance)},
                             {"pair", Json::array({doc.disjointness.first, doc.disjointness.second})}};
  Json pairing = Json::array();
  for (const auto& h : doc.axis_pairing) {
    pairing.push_back(Json{{"component", h.component}, {"z", Json::array({h.z[0], h.z[1]})}, {"w", Json::array({h.w[0], h.w[1]})}});
  }
  out["axis_pairing"] = std::move(pairing);
  out["verdict"] = to_json(doc.verdict);
  if (doc.options.timings) {
    Json t = Json::object();
    for (const auto& [k, ms] : doc.timings_ms) t[k] = format_double(ms);
    out["timings_ms"] = std::move(t);
  }
  return out;
}

}  // namespace gclink::cli
