#include "gclink/cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "gclink/cli/certificate.hpp"
#include "gclink/cli/projection.hpp"
#include "gclink/cli/recheck.hpp"
#include "gclink/cli/svg.hpp"
#include "gclink/errors.hpp"
#include "gclink/montesinos.hpp"
#include "gclink/version.hpp"

namespace gclink::cli {

namespace {

struct Settings {
  std::string fraction;
  std::string second;
  std::string json_path;
  std::string svg_path;
  std::string file;
  int samples = 0;
  int max_depth = 0;
  double tolerance = kDefaultTolerance;
  bool timings = false;
  std::vector<std::string> tangles;
  std::int64_t e0 = 0;
};

void configure_threads() {
  if (const char* env = std::getenv("GCLINK_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) omp_set_num_threads(static_cast<int>(n));
  }
}

/// "-" means the given stream.
void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidInput("cannot open " + path + " for writing");
  file << text;
  if (!file) throw InvalidInput("failed writing " + path);
}

std::optional<int> depth_option(const Settings& s) {
  if (s.max_depth <= 0) return std::nullopt;
  return s.max_depth;
}

void print_verdict(const VirtualFibrationVerdict& v, std::ostream& out) {
  out << "verdict: " << to_string(v.status) << "\n";
  if (v.expansion) out << "  witness: " << v.expansion->member.to_string() << " = " << v.expansion->expansion.to_string() << "\n";
  if (!v.cover_name.empty()) out << "  cover: " << v.cover_name << ", degree " << v.cover_degree << "\n";
  out << "  evidence: " << v.evidence << "\n";
}

int cmd_certify(const Settings& s, std::ostream& out, std::ostream& err) {
  CertifyOptions options;
  options.tolerance = s.tolerance;
  if (s.samples > 0) options.winding_samples = s.samples;
  options.max_depth = depth_option(s);
  options.timings = s.timings;
  const auto fraction = TwoBridgeFraction::parse(s.fraction);
  const CertificateDocument doc = certify(fraction, options);
  const auto& cov = doc.covering;
  std::ostream& summary = s.json_path == "-" ? err : out;
  summary << "D_{" << fraction.to_string() << "}: " << doc.link.size() << " components, min distance "
          << format_double(doc.disjointness.min_distance) << "\n";
  summary << "covering: " << cov.intermediate_quotient.name() << ", free action, " << to_string(cov.orbit_structure)
          << ", axis pairing verified, wedge arcs " << cov.wedge_reports[0].arc_count << " + "
          << cov.wedge_reports[1].arc_count << ", degree " << cov.cyclic_degree << " x " << cov.branched_degree
          << " = " << cov.total_degree << "\n";
  summary << "fibrations: " << doc.fibrations.size() << " bases, fiber is a " << doc.link.size() - 1
          << "-punctured disk (euler characteristic " << 2 - static_cast<int>(doc.link.size()) << ")\n";
  print_verdict(doc.verdict, summary);
  if (!s.json_path.empty()) write_text(s.json_path, to_json(doc).dump(2) + "\n", out);
  if (!s.svg_path.empty()) {
    ProjectionOptions popt;
    const ProjectionScene scene = render_projection(doc.link, popt);
    for (const auto& w : scene.warnings) err << "warning: " << w << "\n";
    write_text(s.svg_path, render_svg(scene, {.title = "D_{" + fraction.to_string() + "}"}), out);
  }
  summary << "certified\n";
  return kCertified;
}

int cmd_twobridge(const Settings& s, std::ostream& out, std::ostream& /*err*/) {
  const auto fraction = TwoBridgeFraction::parse(s.fraction);
  const auto v = twobridge::verdict(fraction, depth_option(s));
  out << fraction.to_string() << ": " << (fraction.is_trivial_link() ? "trivial link" : fraction.is_knot() ? "knot" : "link")
      << "\n";
  print_verdict(v, out);
  if (!s.json_path.empty()) write_text(s.json_path, to_json(v).dump(2) + "\n", out);
  return kCertified;
}

int cmd_montesinos(const Settings& s, std::ostream& out, std::ostream& /*err*/) {
  MontesinosLink link;
  link.e0 = s.e0;
  for (const auto& t : s.tangles) link.tangles.push_back(RationalTangle::parse(t));
  const auto c = montesinos::classify(link);
  const auto v = montesinos::verdict(link);
  out << "base " << c.base.to_string() << ", orbifold euler characteristic "
      << format_rational(orbifold_euler_char(c.base)) << ", euler number " << format_rational(c.euler_number) << "\n";
  out << "geometry: " << to_string(c.geometry) << " (" << c.reason << ")\n";
  print_verdict(v, out);
  if (!s.json_path.empty()) {
    Json j = to_json(v);
    j["classification"] = Json{{"base", c.base.to_string()},
                               {"euler_number", format_rational(c.euler_number)},
                               {"geometry", to_string(c.geometry)},
                               {"reason", c.reason}};
    write_text(s.json_path, j.dump(2) + "\n", out);
  }
  return kCertified;
}

int cmd_equiv(const Settings& s, std::ostream& out, std::ostream& /*err*/) {
  const auto a = TwoBridgeFraction::parse(s.fraction);
  auto print_class = [&](const TwoBridgeFraction& f) {
    out << "class of " << f.to_string() << ":";
    for (const auto& m : twobridge::equivalence_class(f)) out << " " << m.to_string();
    out << "\n";
  };
  print_class(a);
  if (!s.second.empty()) {
    const auto b = TwoBridgeFraction::parse(s.second);
    out << a.to_string() << " and " << b.to_string() << " are "
        << (twobridge::schubert_equivalent(a, b) ? "equivalent" : "not equivalent") << "\n";
  }
  return kCertified;
}

int cmd_project(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto fraction = TwoBridgeFraction::parse(s.fraction);
  if (fraction.is_trivial_link()) throw OutOfScope("1/0 is the trivial two component link; it is excluded");
  const GreatCircleLink link = construct_dpq(fraction.p(), fraction.q());
  ProjectionOptions options;
  if (s.samples > 0) options.samples = s.samples;
  const ProjectionScene scene = render_projection(link, options);
  for (const auto& w : scene.warnings) err << "warning: " << w << "\n";
  const std::string svg = render_svg(scene, {.title = "D_{" + fraction.to_string() + "}"});
  const std::string path = s.svg_path.empty() ? "-" : s.svg_path;
  write_text(path, svg, out);
  std::ostream& summary = path == "-" ? err : out;
  const auto counts = crossing_counts(scene);
  const auto sums = signed_crossing_sums(scene);
  const auto lk = linking_matrix(link);
  bool consistent = true;
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      if (i != j && (counts(i, j) % 2 != 0 || sums(i, j) != 2 * lk(i, j))) consistent = false;
    }
  }
  summary << "D_{" << fraction.to_string() << "}: " << scene.components.size() << " components, "
          << scene.crossings.size() << " crossings, signed crossings "
          << (consistent ? "match" : "DO NOT match") << " the linking matrix\n";
  if (!s.json_path.empty()) {
    Json crossings = Json::array();
    for (const auto& c : scene.crossings) {
      crossings.push_back(Json{{"over", c.over}, {"under", c.under}, {"sign", c.sign},
                               {"x", format_double(c.x)}, {"y", format_double(c.y)}});
    }
    Json j{{"schema", "gclink.projection/1"},
           {"fraction", fraction.to_string()},
           {"samples", scene.samples},
           {"components", scene.components.size()},
           {"crossings", std::move(crossings)}};
    write_text(s.json_path, j.dump(2) + "\n", out);
  }
  return consistent ? kCertified : kFalsified;
}

int cmd_recheck(const Settings& s, std::ostream& out, std::ostream& /*err*/) {
  std::ifstream file(s.file);
  if (!file) throw InvalidInput("cannot open " + s.file);
  Json doc;
  try {
    doc = Json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(s.file + " is not valid JSON: " + e.what());
  }
  const RecheckReport report = recheck(doc);
  for (const auto& line : report.lines) {
    out << (line.ok ? "[ok]   " : "[FAIL] ") << line.check << ": " << line.detail << "\n";
  }
  out << (report.passed() ? "recheck passed\n" : "recheck FAILED\n");
  return report.passed() ? kCertified : kFalsified;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_threads();
  Settings s;
  CLI::App app{"Great circle link certificates for two-bridge and Montesinos links", "gclink"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* certify = app.add_subcommand("certify", "build D_{p/q} and certify its covering and fibration claims");
  certify->add_option("fraction", s.fraction, "two-bridge fraction p/q")->required();
  certify->add_option("--json", s.json_path, "write the certificate document (- for stdout)");
  certify->add_option("--svg", s.svg_path, "also write the standard projection");
  certify->add_option("--samples", s.samples, "samples for the sampled winding check (default 1000)");
  certify->add_option("--max-depth", s.max_depth, "depth cap of the +-2 continued fraction search");
  certify->add_option("--tolerance", s.tolerance, "disjointness and degeneracy tolerance")->capture_default_str();
  certify->add_flag("--timings", s.timings, "include stage timings in the JSON document");

  auto* tb = app.add_subcommand("twobridge", "classify a two-bridge knot or link");
  tb->add_option("fraction", s.fraction, "two-bridge fraction p/q")->required();
  tb->add_option("--json", s.json_path, "write the verdict as JSON (- for stdout)");
  tb->add_option("--max-depth", s.max_depth, "depth cap of the +-2 continued fraction search");

  auto* mont = app.add_subcommand("montesinos", "classify a Montesinos knot or link");
  mont->add_option("-t,--tangle", s.tangles, "rational tangle beta/alpha (repeatable)")->required();
  mont->add_option("-e,--e0", s.e0, "integral twist parameter")->capture_default_str();
  mont->add_option("--json", s.json_path, "write the verdict as JSON (- for stdout)");

  auto* equiv = app.add_subcommand("equiv", "Schubert equivalence class of p/q, or compare two fractions");
  equiv->add_option("fraction", s.fraction, "p/q")->required();
  equiv->add_option("other", s.second, "p'/q'");

  auto* project = app.add_subcommand("project", "draw the standard projection of D_{p/q} as SVG");
  project->add_option("fraction", s.fraction, "two-bridge fraction p/q")->required();
  project->add_option("--svg", s.svg_path, "output file (default stdout)");
  project->add_option("--json", s.json_path, "write the crossing list as JSON");
  project->add_option("--samples", s.samples, "samples per component (default 400)");

  auto* re = app.add_subcommand("recheck", "independently re-validate a certificate document");
  re->add_option("file", s.file, "certificate JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kInvalidInput;
  }

  try {
    if (certify->parsed()) return cmd_certify(s, out, err);
    if (tb->parsed()) return cmd_twobridge(s, out, err);
    if (mont->parsed()) return cmd_montesinos(s, out, err);
    if (equiv->parsed()) return cmd_equiv(s, out, err);
    if (project->parsed()) return cmd_project(s, out, err);
    if (re->parsed()) return cmd_recheck(s, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const OutOfScope& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const CertificateFailed& e) {
    err << "check failed [" << e.check() << "]: " << e.what() << "\n";
    return kFalsified;
  } catch (const Error& e) {
    err << "check failed: " << e.what() << "\n";
    return kFalsified;
  }
  return kInvalidInput;
}

}  // namespace gclink::cli
