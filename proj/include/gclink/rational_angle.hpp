#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace gclink {

/// Cosine and sine of an angle, evaluated together.
struct CosSin {
  double cos;
  double sin;
};

/**
 * An angle (num/den)·π held exactly.
 *
 * Normal form: den > 0, gcd(num, den) = 1 (den = 1 when num = 0) and
 * 0 <= num < 2·den, so two angles are equal modulo 2π iff their fields are
 * equal. All arithmetic stays in this form.
 */
class RationalAngle {
 public:
  constexpr RationalAngle() = default;
  /// Throws InvalidInput when den <= 0.
  RationalAngle(std::int64_t num, std::int64_t den);

  /// k·π/den.
  static RationalAngle pi_fraction(std::int64_t k, std::int64_t den) { return {k, den}; }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double radians() const;

  /// cos/sin with exact quadrant symmetry: angles differing by π give exactly
  /// negated results, and multiples of π/2 are exact.
  CosSin cos_sin() const;

  RationalAngle operator+(const RationalAngle& other) const;
  RationalAngle operator-(const RationalAngle& other) const;
  RationalAngle operator-() const;
  RationalAngle scaled(std::int64_t k) const;

  bool is_zero() const { return num_ == 0; }
  bool is_multiple_of_pi() const { return num_ % den_ == 0; }
  bool congruent_mod_pi(const RationalAngle& other) const {
    return (*this - other).is_multiple_of_pi();
  }

  /// Representative of the class modulo π, in [0, π).
  RationalAngle reduced_mod_pi() const;

  /// Distance to the nearest multiple of π, in [0, π/2].
  RationalAngle distance_to_pi_multiple() const;

  /// Sign of sin(angle): 0, +1 on (0, π), -1 on (π, 2π).
  int sin_sign() const;

  /// The integer k with angle = k·π/q (mod 2π), k in [0, 2q), if one exists.
  std::optional<std::int64_t> in_units_of(std::int64_t q) const;

  /// "num/den" meaning (num/den)·π.
  std::string to_string() const;

  friend bool operator==(const RationalAngle&, const RationalAngle&) = default;
  friend bool operator<(const RationalAngle& a, const RationalAngle& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace gclink
