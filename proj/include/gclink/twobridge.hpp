#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gclink/covering.hpp"

namespace gclink {

using Rational = boost::multiprecision::cpp_rational;

/// Two-bridge fraction p/q: gcd(p, q) = 1 and 0 < p < q, or the sentinel 1/0.
class TwoBridgeFraction {
 public:
  /// Normalises signs and reduces p mod q. Throws InvalidInput for non-coprime
  /// input or q = ±1 (the unknot).
  static TwoBridgeFraction make(std::int64_t p, std::int64_t q);
  /// Parses "p/q".
  static TwoBridgeFraction parse(std::string_view text);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  bool is_trivial_link() const { return q_ == 0; }
  /// q odd.
  bool is_knot() const { return q_ % 2 == 1; }
  Rational value() const { return Rational(p_) / q_; }
  std::string to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

  friend bool operator==(const TwoBridgeFraction&, const TwoBridgeFraction&) = default;
  friend auto operator<=>(const TwoBridgeFraction&, const TwoBridgeFraction&) = default;

 private:
  TwoBridgeFraction(std::int64_t p, std::int64_t q) : p_(p), q_(q) {}
  std::int64_t p_;
  std::int64_t q_;
};

/// 1/(2s₁ + 1/(2s₂ + ... + 1/(2sₙ))) with every sᵢ = ±1.
struct EvenContinuedFraction {
  std::vector<int> signs;

  /// Exact value, evaluated innermost first; 0 for the empty expansion.
  Rational value() const;
  std::string to_string() const;
};

struct Pm2Expansion {
  TwoBridgeFraction member;  ///< class member the expansion evaluates to
  EvenContinuedFraction expansion;
};

struct Pm2Search {
  std::optional<Pm2Expansion> found;
  int max_depth = 0;
  /// False when some branch was cut by max_depth rather than by the |residual| < 1 test.
  bool complete = true;
};

enum class FibrationStatus { Fibered, VirtuallyFibered, OutOfScope };
std::string to_string(FibrationStatus s);

struct VirtualFibrationVerdict {
  std::string input;
  FibrationStatus status = FibrationStatus::OutOfScope;
  std::optional<Pm2Expansion> expansion;     ///< set when Fibered
  std::optional<CoveringCertificate> cover;  ///< set when virtually fibered through D_{p/q}
  std::string cover_name;
  std::int64_t cover_degree = 0;
  std::string evidence;
  std::vector<std::pair<std::string, std::string>> metadata;
};

namespace twobridge {

/// q1 = q2 and p2 ≡ ±p1 or p1·p2 ≡ ±1 (mod q).
bool schubert_equivalent(const TwoBridgeFraction& a, const TwoBridgeFraction& b);

/// {p, q−p, p⁻¹, q−p⁻¹} mod q, sorted and deduplicated.
std::vector<TwoBridgeFraction> equivalence_class(const TwoBridgeFraction& f);

/// ±2 expansion of a single value in (−1, 1), by depth-first search over signs
/// pruned to residuals |r| < 1. `complete` is cleared if max_depth cut the search.
std::optional<EvenContinuedFraction> expand_pm2(const Rational& x, int max_depth, bool* complete = nullptr);

/// Searches every member of the Schubert class; max_depth defaults to 2q.
Pm2Search search_pm2_expansion(const TwoBridgeFraction& f, std::optional<int> max_depth = std::nullopt);
std::optional<Pm2Expansion> find_pm2_expansion(const TwoBridgeFraction& f,
                                               std::optional<int> max_depth = std::nullopt);

/// FIBERED with a ±2 witness, otherwise VIRTUALLY_FIBERED through D_{p/q} with
/// its covering certificate; 1/0 is OUT_OF_SCOPE.
VirtualFibrationVerdict verdict(const TwoBridgeFraction& f, std::optional<int> max_depth = std::nullopt);

}  // namespace twobridge
}  // namespace gclink
