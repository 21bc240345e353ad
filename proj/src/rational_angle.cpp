#include "gclink/rational_angle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gclink/errors.hpp"

namespace gclink {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

RationalAngle::RationalAngle(std::int64_t num, std::int64_t den) {
  if (den <= 0) {
    throw InvalidInput("RationalAngle: denominator must be positive, got " + std::to_string(den));
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num /= g;
  den /= g;
  num = floor_mod(num, 2 * den);
  if (num == 0) den = 1;
  num_ = num;
  den_ = den;
}

double RationalAngle::radians() const {
  return std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
}

CosSin RationalAngle::cos_sin() const {
  // Fold into [0, π/2] with exact sign flips, then evaluate once.
  std::int64_t k = num_;
  const std::int64_t d = den_;
  double cs = 1.0;
  double sn = 1.0;
  if (k >= d) {  // θ - π
    k -= d;
    cs = -cs;
    sn = -sn;
  }
  bool mirrored = false;
  if (2 * k > d) {  // π - θ
    k = d - k;
    mirrored = true;
  }
  double c;
  double s;
  if (k == 0) {
    c = 1.0;
    s = 0.0;
  } else if (2 * k == d) {
    c = 0.0;
    s = 1.0;
  } else {
    const double x = std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
    c = std::cos(x);
    s = std::sin(x);
  }
  if (mirrored) c = -c;
  return {cs * c, sn * s};
}

RationalAngle RationalAngle::operator+(const RationalAngle& other) const {
  const std::int64_t l = std::lcm(den_, other.den_);
  return {num_ * (l / den_) + other.num_ * (l / other.den_), l};
}

RationalAngle RationalAngle::operator-(const RationalAngle& other) const { return *this + (-other); }

RationalAngle RationalAngle::operator-() const { return {-num_, den_}; }

RationalAngle RationalAngle::scaled(std::int64_t k) const {
  // Reduce k first so the product stays small.
  return {floor_mod(k, 2 * den_) * num_, den_};
}

RationalAngle RationalAngle::reduced_mod_pi() const { return {num_ % den_, den_}; }

RationalAngle RationalAngle::distance_to_pi_multiple() const {
  const std::int64_t r = num_ % den_;
  return {std::min(r, den_ - r), den_};
}

int RationalAngle::sin_sign() const {
  if (num_ % den_ == 0) return 0;
  return num_ < den_ ? 1 : -1;
}

std::optional<std::int64_t> RationalAngle::in_units_of(std::int64_t q) const {
  if (q <= 0) return std::nullopt;
  if ((num_ * q) % den_ != 0) return std::nullopt;
  return floor_mod(num_ * q / den_, 2 * q);
}

std::string RationalAngle::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool operator<(const RationalAngle& a, const RationalAngle& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

}  // namespace gclink
