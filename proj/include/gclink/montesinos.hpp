#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gclink/twobridge.hpp"

namespace gclink {

/// Rational tangle β/α with α ≥ 2, 0 < β < α and gcd(β, α) = 1.
struct RationalTangle {
  std::int64_t beta = 0;
  std::int64_t alpha = 0;

  static RationalTangle make(std::int64_t beta, std::int64_t alpha);
  /// Parses "β/α".
  static RationalTangle parse(std::string_view text);
  std::string to_string() const { return std::to_string(beta) + "/" + std::to_string(alpha); }
};

struct MontesinosLink {
  std::int64_t e0 = 0;
  std::vector<RationalTangle> tangles;

  /// Throws InvalidInput when empty or when a tangle is out of range.
  void validate() const;
  std::string to_string() const;
};

/// S²(α₁, ..., αₙ); cone orders sorted ascending, each ≥ 2.
struct OrbifoldBase {
  std::vector<std::int64_t> cone_orders;

  static OrbifoldBase make(std::vector<std::int64_t> orders);
  std::string to_string() const;
};

enum class Geometry { Spherical, NotSpherical };
std::string to_string(Geometry g);

struct SeifertClassification {
  OrbifoldBase base;
  Rational euler_number;
  Geometry geometry = Geometry::NotSpherical;
  std::string reason;
};

/// 2 − Σ(1 − 1/αᵢ). Throws InvalidInput for an order below 2.
Rational orbifold_euler_char(const OrbifoldBase& base);

/// At most two cone points, or one of (2,2,n), (2,3,3), (2,3,4), (2,3,5).
bool spherical_by_list(const OrbifoldBase& base);
/// Positive orbifold Euler characteristic.
bool spherical_by_euler_char(const OrbifoldBase& base);

namespace montesinos {

/// Base orbifold from the αᵢ, Euler number −(e0 + Σ βᵢ/αᵢ).
SeifertClassification classify(const MontesinosLink& link);

/// VIRTUALLY_FIBERED for spherical data, OUT_OF_SCOPE otherwise.
VirtualFibrationVerdict verdict(const MontesinosLink& link);

}  // namespace montesinos
}  // namespace gclink
