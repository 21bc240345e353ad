#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gclink/covering.hpp"
#include "gclink/fibration.hpp"
#include "gclink/twobridge.hpp"

namespace gclink::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCertificateSchema = "gclink.certificate/1";

struct CertifyOptions {
  double tolerance = kDefaultTolerance;
  int winding_samples = 1000;
  std::optional<int> max_depth;
  bool timings = false;
};

/// Everything `recheck` needs: frames, the claimed combinatorics and the verdict.
struct CertificateDocument {
  TwoBridgeFraction fraction = TwoBridgeFraction::make(1, 0);
  CertifyOptions options;
  GreatCircleLink link{std::vector<GreatCircle>{}};
  CoveringCertificate covering;
  std::vector<FibrationCertificate> fibrations;
  /// sampled[b][i] pairs with fibrations[b].records[i].
  std::vector<std::vector<kernels::WindingSample>> sampled;
  Eigen::MatrixXi linking;
  DisjointnessReport disjointness{};
  std::vector<AxisHit> axis_pairing;
  VirtualFibrationVerdict verdict;
  std::vector<std::pair<std::string, double>> timings_ms;
};

/**
 * Full pipeline for D_{p/q}: construction, covering certificate, every
 * fibration, sampled winding, linking matrix and verdict. Throws OutOfScope
 * for 1/0 and CertificateFailed or NotDisjoint when a check is falsified.
 */
CertificateDocument certify(const TwoBridgeFraction& fraction, const CertifyOptions& options = {});

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);
std::string format_rational(const Rational& r);

Json to_json(const CertificateDocument& doc);
Json to_json(const VirtualFibrationVerdict& verdict);

}  // namespace gclink::cli
