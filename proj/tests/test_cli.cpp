#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "gclink/cli/certificate.hpp"
#include "gclink/cli/commands.hpp"
#include "gclink/cli/projection.hpp"
#include "gclink/cli/recheck.hpp"
#include "gclink/cli/svg.hpp"
#include "gclink/errors.hpp"
#include "test_support.hpp"

using namespace gclink;
using namespace gclink::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gclink_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

int count_of(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, CertifyThenRecheck) {
  const auto path = scratch("cert_2_5.json");
  const auto r = invoke({"certify", "2/5", "--json", path.string()});
  ASSERT_EQ(r.code, kCertified) << r.err;
  EXPECT_NE(r.out.find("certified"), std::string::npos);
  EXPECT_NE(r.out.find("degree 5 x 2 = 10"), std::string::npos);
  EXPECT_NE(r.out.find("FIBERED"), std::string::npos);
  const auto re = invoke({"recheck", path.string()});
  EXPECT_EQ(re.code, kCertified) << re.out;
  EXPECT_NE(re.out.find("recheck passed"), std::string::npos);
  EXPECT_EQ(re.out.find("[FAIL]"), std::string::npos);
}

TEST(Cli, RecheckCatchesTampering) {
  const Json doc = to_json(certify(TwoBridgeFraction::make(3, 8)));
  ASSERT_TRUE(recheck(doc).passed());

  Json frame = doc;
  frame["link"]["components"][1]["u"][0] = "0.5";
  EXPECT_FALSE(recheck(frame).passed());

  Json moved = doc;
  // A different but still orthonormal frame: the circle no longer matches the tag.
  moved["link"]["components"][2]["u"] = Json::array({"0", "0", "1", "0"});
  moved["link"]["components"][2]["v"] = Json::array({"1", "0", "0", "0"});
  EXPECT_FALSE(recheck(moved).passed());

  Json lk = doc;
  lk["linking_matrix"][0][1] = -lk["linking_matrix"][0][1].get<int>();
  EXPECT_FALSE(recheck(lk).passed());

  Json degree = doc;
  degree["covering"]["degrees"]["total"] = 15;
  EXPECT_FALSE(recheck(degree).passed());

  // 3/8 = 1/(2 + 1/(2 + 1/(-2))) is fibered.
  ASSERT_EQ(doc["verdict"]["status"], "FIBERED");
  Json status = doc;
  status["verdict"]["status"] = "VIRTUALLY_FIBERED";
  EXPECT_FALSE(recheck(status).passed());

  Json signs = doc;
  signs["verdict"]["expansion"]["signs"][0] = -signs["verdict"]["expansion"]["signs"][0].get<int>();
  EXPECT_FALSE(recheck(signs).passed());

  Json schema = doc;
  schema["schema"] = "something/2";
  EXPECT_THROW(recheck(schema), InvalidInput);
  EXPECT_THROW(recheck(Json::object()), InvalidInput);

  const auto path = scratch("tampered.json");
  write(path, lk.dump(2));
  EXPECT_EQ(invoke({"recheck", path.string()}).code, kFalsified);
  write(path, "{ not json");
  EXPECT_EQ(invoke({"recheck", path.string()}).code, kInvalidInput);
  EXPECT_EQ(invoke({"recheck", scratch("missing.json").string()}).code, kInvalidInput);
}

TEST(Cli, RecheckAcceptsEveryCertificateUpTo16) {
  for (auto [p, q] : gclink::testing::coprime_fractions(2, 16)) {
    const Json doc = to_json(certify(TwoBridgeFraction::make(p, q), {.winding_samples = 200}));
    const auto report = recheck(doc);
    EXPECT_TRUE(report.passed()) << p << "/" << q;
    EXPECT_GE(report.lines.size(), 12u);
  }
}

TEST(Cli, InvalidInputsExitWithTwo) {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{{"certify", "1/0"},
                                             {"certify", "2/4"},
                                             {"certify", "banana"},
                                             {"certify", "3/1"},
                                             {"twobridge", "6/9"},
                                             {"montesinos", "-t", "1/1"},
                                             {"montesinos", "-t", "2/4"},
                                             {"project", "1/0"},
                                             {"frobnicate"},
                                             {},
                                             {"certify"},
                                             {"certify", "2/5", "--samples", "lots"}}) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, kInvalidInput) << (args.empty() ? "<none>" : args[0]);
  }
  const auto trivial = invoke({"certify", "1/0"});
  EXPECT_NE(trivial.err.find("trivial two component link"), std::string::npos);
  EXPECT_NE(invoke({"certify", "2/4"}).err.find("gcd(2, 4) != 1"), std::string::npos);
}

TEST(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  const auto v = invoke({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

TEST(Cli, TwoBridge) {
  const auto a = invoke({"twobridge", "3/7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("VIRTUALLY_FIBERED"), std::string::npos);
  EXPECT_NE(a.out.find("D_{3/7}, degree 14"), std::string::npos);
  const auto b = invoke({"twobridge", "1/3"});
  EXPECT_NE(b.out.find("2/3 = 1/(2 + 1/(-2))"), std::string::npos);
  const auto c = invoke({"twobridge", "1/0"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("OUT_OF_SCOPE"), std::string::npos);

  const auto j = invoke({"twobridge", "2/5", "--json", "-"});
  const Json doc = Json::parse(j.out.substr(j.out.find('{')));
  EXPECT_EQ(doc["status"], "FIBERED");
  EXPECT_EQ(doc["expansion"]["value"], "2/5");
}

TEST(Cli, Montesinos) {
  const auto a = invoke({"montesinos", "-t", "1/2", "-t", "1/3", "-t", "2/5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("S(2,3,5)"), std::string::npos);
  EXPECT_NE(a.out.find("-37/30"), std::string::npos);
  EXPECT_NE(a.out.find("SPHERICAL"), std::string::npos);
  EXPECT_NE(a.out.find("VIRTUALLY_FIBERED"), std::string::npos);
  const auto b = invoke({"montesinos", "-t", "1/2", "-t", "1/3", "-t", "1/7"});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("OUT_OF_SCOPE"), std::string::npos);
  const auto c = invoke({"montesinos", "-e", "-1", "-t", "1/2", "-t", "1/2"});
  EXPECT_NE(c.out.find("Euler number is 0"), std::string::npos);
}

TEST(Cli, Equiv) {
  const auto a = invoke({"equiv", "3/7"});
  EXPECT_NE(a.out.find("class of 3/7: 2/7 3/7 4/7 5/7"), std::string::npos);
  EXPECT_NE(invoke({"equiv", "1/3", "2/3"}).out.find("are equivalent"), std::string::npos);
  EXPECT_NE(invoke({"equiv", "1/7", "2/7"}).out.find("not equivalent"), std::string::npos);
}

TEST(CertificateJson, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 2.220446049250313e-16, -0.6283185307179586, 1e300, 5e-324}) {
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_rational(Rational(-37, 30)), "-37/30");
  EXPECT_EQ(format_rational(Rational(2)), "2/1");
}

TEST(CertificateJson, DeterministicAndOrdered) {
  const auto f = TwoBridgeFraction::make(3, 7);
  const std::string a = to_json(certify(f)).dump(2);
  const std::string b = to_json(certify(f)).dump(2);
  EXPECT_EQ(a, b);
  const Json doc = Json::parse(a);
  EXPECT_EQ(doc["schema"], kCertificateSchema);
  EXPECT_EQ(doc.begin().key(), "schema");
  EXPECT_FALSE(doc.contains("timings_ms"));
  EXPECT_EQ(doc["link"]["components"].size(), 7u);
  EXPECT_EQ(doc["verdict"]["status"], "VIRTUALLY_FIBERED");
  EXPECT_EQ(doc["verdict"]["cover"]["degree"], 14);

  CertifyOptions timed;
  timed.timings = true;
  EXPECT_TRUE(to_json(certify(f, timed)).contains("timings_ms"));
}

TEST(CertificateJson, CertifyRejectsTrivialLink) {
  EXPECT_THROW(certify(TwoBridgeFraction::make(1, 0)), OutOfScope);
}

TEST(Projection, ChartIsRotationWithPoleLast) {
  const PoleAngles pole;
  const auto chart = projection_chart(pole);
  EXPECT_NEAR((chart.rotation * chart.rotation.transpose() - Mat4::Identity()).norm(), 0.0, 1e-12);
  EXPECT_NEAR(chart.rotation.determinant(), 1.0, 1e-12);
  EXPECT_NEAR((chart.rotation.row(3).transpose() - pole.pole()).norm(), 0.0, 1e-12);
}

TEST(Projection, TwoFifths) {
  const auto link = construct_dpq(2, 5);
  const auto scene = render_projection(link);
  EXPECT_EQ(scene.components.size(), 5u);
  EXPECT_TRUE(scene.warnings.empty());
  const auto counts = crossing_counts(scene);
  const auto sums = signed_crossing_sums(scene);
  const auto lk = linking_matrix(link);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      EXPECT_EQ(counts(i, j) % 2, 0);
      EXPECT_GE(counts(i, j), 2);
      EXPECT_EQ(sums(i, j), 2 * lk(i, j));
    }
  }
  for (const auto& c : scene.crossings) {
    EXPECT_GT(c.depth_over, c.depth_under);
    EXPECT_NE(c.over, c.under);
  }
}

TEST(Projection, OneHalfHasTwoCrossings) {
  const auto scene = render_projection(construct_dpq(1, 2));
  EXPECT_EQ(scene.crossings.size(), 2u);
}

TEST(Projection, SingleCircleHasNoCrossings) {
  const auto scene = render_projection(GreatCircleLink({GreatCircle::from_axes({0, 1}, {0, 1})}));
  EXPECT_TRUE(scene.crossings.empty());
}

TEST(Projection, StableUnderResampling) {
  const auto link = construct_dpq(3, 7);
  const auto coarse = render_projection(link, {.samples = 400});
  const auto fine = render_projection(link, {.samples = 800});
  ASSERT_EQ(coarse.crossings.size(), fine.crossings.size());
  EXPECT_EQ(crossing_counts(coarse), crossing_counts(fine));
  EXPECT_EQ(signed_crossing_sums(coarse), signed_crossing_sums(fine));
}

TEST(Projection, SerialAndParallelAgree) {
  const auto link = construct_dpq(2, 9);
  const auto a = render_projection(link, {.parallel = false});
  const auto b = render_projection(link, {.parallel = true});
  ASSERT_EQ(a.crossings.size(), b.crossings.size());
  for (std::size_t i = 0; i < a.crossings.size(); ++i) {
    EXPECT_EQ(a.crossings[i].over, b.crossings[i].over);
    EXPECT_NEAR(a.crossings[i].x, b.crossings[i].x, 1e-12);
  }
}

TEST(Projection, SignedCrossingsMatchLinkingUpTo9) {
  for (auto [p, q] : gclink::testing::coprime_fractions(2, 9)) {
    const auto link = construct_dpq(p, q);
    const auto scene = render_projection(link, {.samples = 200});
    const auto counts = crossing_counts(scene);
    const auto sums = signed_crossing_sums(scene);
    const auto lk = linking_matrix(link);
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
      for (Eigen::Index j = 0; j < counts.cols(); ++j) {
        if (i == j) continue;
        EXPECT_EQ(counts(i, j) % 2, 0) << p << "/" << q;
        EXPECT_EQ(sums(i, j), 2 * lk(i, j)) << p << "/" << q;
      }
    }
  }
}

TEST(Projection, RejectsFewSamplesAndIntersectingLinks) {
  EXPECT_THROW(render_projection(construct_dpq(2, 5), {.samples = 99}), InvalidInput);
  const GreatCircleLink bad({GreatCircle::from_axes({0, 1}, {0, 1}), GreatCircle::from_axes({0, 1}, {1, 2})});
  EXPECT_THROW(render_projection(bad), NotDisjoint);
}

TEST(Projection, PoleOnTheLinkIsMoved) {
  PoleAngles on_link;
  on_link.psi = 0.0;
  on_link.eta = 0.0;  // (1, 0, 0, 0) lies on g_{0,0}
  const auto scene = render_projection(construct_dpq(2, 5), {.pole = on_link});
  EXPECT_FALSE(scene.warnings.empty());
  EXPECT_NE(scene.pole.psi, 0.0);
}

TEST(Svg, DeterministicWithOnePathPerComponent) {
  const auto scene = render_projection(construct_dpq(2, 5));
  const std::string a = render_svg(scene, {.title = "D_{2/5}"});
  const std::string b = render_svg(render_projection(construct_dpq(2, 5)), {.title = "D_{2/5}"});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("<?xml", 0), 0u);
  EXPECT_NE(a.find("<svg"), std::string::npos);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  EXPECT_EQ(count_of(a, "class=\"component\""), 5);
  EXPECT_EQ(count_of(a, "class=\"w-axis\""), 1);
  EXPECT_NE(a.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(a.find("D_{2/5}"), std::string::npos);
  for (int k = 0; k < 5; ++k) EXPECT_NE(a.find("id=\"component-" + std::to_string(k) + "\""), std::string::npos);
  // No NaN or infinity leaks into coordinates.
  EXPECT_EQ(a.find("nan"), std::string::npos);
  EXPECT_EQ(a.find("inf"), std::string::npos);
}

TEST(Svg, UnderCrossingsOpenGaps) {
  const auto scene = render_projection(construct_dpq(1, 2));
  const std::string svg = render_svg(scene);
  // Each component passes under once, so each path has a gap and two move-to commands at most.
  const std::regex path_re("<path class=\"component\"[^>]* d=\"([^\"]*)\"");
  int paths = 0;
  for (std::sregex_iterator it(svg.begin(), svg.end(), path_re), end; it != end; ++it) {
    const std::string d = (*it)[1];
    EXPECT_GE(count_of(d, "M"), 1);
    EXPECT_EQ(count_of(d, "Z"), 0);
    ++paths;
  }
  EXPECT_EQ(paths, 2);
}

TEST(Cli, ProjectWritesSvg) {
  const auto path = scratch("d_2_5.svg");
  const auto r = invoke({"project", "2/5", "--svg", path.string()});
  EXPECT_EQ(r.code, kCertified) << r.err;
  EXPECT_NE(r.out.find("signed crossings match"), std::string::npos);
  EXPECT_EQ(count_of(slurp(path), "class=\"component\""), 5);
  const auto stdout_svg = invoke({"project", "2/5"});
  EXPECT_EQ(stdout_svg.out, slurp(path));
}
