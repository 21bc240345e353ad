#include "gclink/montesinos.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "gclink/errors.hpp"

namespace gclink {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidInput("cannot parse tangle '" + std::string(whole) + "'");
  }
  return value;
}

std::string rational_string(const Rational& r) {
  std::ostringstream out;
  out << numerator(r) << "/" << denominator(r);
  return out.str();
}

}  // namespace

RationalTangle RationalTangle::make(std::int64_t beta, std::int64_t alpha) {
  const std::string name = std::to_string(beta) + "/" + std::to_string(alpha);
  if (alpha < 2) throw InvalidInput("tangle " + name + ": denominator must be at least 2");
  if (beta <= 0 || beta >= alpha) throw InvalidInput("tangle " + name + ": need 0 < beta < alpha");
  if (std::gcd(beta, alpha) != 1) throw InvalidInput("tangle " + name + ": gcd(beta, alpha) != 1");
  return RationalTangle{beta, alpha};
}

RationalTangle RationalTangle::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw InvalidInput("expected beta/alpha, got '" + std::string(text) + "'");
  return make(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

void MontesinosLink::validate() const {
  if (tangles.empty()) throw InvalidInput("Montesinos link needs at least one tangle");
  for (const auto& t : tangles) RationalTangle::make(t.beta, t.alpha);
}

std::string MontesinosLink::to_string() const {
  std::string out = "e0=" + std::to_string(e0);
  for (const auto& t : tangles) out += " (" + t.to_string() + ")";
  return out;
}

OrbifoldBase OrbifoldBase::make(std::vector<std::int64_t> orders) {
  for (auto a : orders) {
    if (a < 2) throw InvalidInput("cone order " + std::to_string(a) + " is below 2");
  }
  std::sort(orders.begin(), orders.end());
  return OrbifoldBase{std::move(orders)};
}

std::string OrbifoldBase::to_string() const {
  std::string out = "S(";
  for (std::size_t i = 0; i < cone_orders.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(cone_orders[i]);
  }
  return out + ")";
}

std::string to_string(Geometry g) { return g == Geometry::Spherical ? "SPHERICAL" : "NOT_SPHERICAL"; }

Rational orbifold_euler_char(const OrbifoldBase& base) {
  Rational chi = 2;
  for (auto a : base.cone_orders) {
    if (a < 2) throw InvalidInput("cone order " + std::to_string(a) + " is below 2");
    chi -= 1 - Rational(1, a);
  }
  return chi;
}

bool spherical_by_list(const OrbifoldBase& base) {
  std::vector<std::int64_t> c = base.cone_orders;
  std::sort(c.begin(), c.end());
  if (c.size() <= 2) return true;
  if (c.size() != 3 || c[0] != 2) return false;
  if (c[1] == 2) return true;
  return c[1] == 3 && c[2] >= 3 && c[2] <= 5;
}

bool spherical_by_euler_char(const OrbifoldBase& base) { return orbifold_euler_char(base) > 0; }

namespace montesinos {

SeifertClassification classify(const MontesinosLink& link) {
  link.validate();
  SeifertClassification out;
  std::vector<std::int64_t> orders;
  Rational sum = link.e0;
  for (const auto& t : link.tangles) {
    orders.push_back(t.alpha);
    sum += Rational(t.beta, t.alpha);
  }
  out.base = OrbifoldBase::make(std::move(orders));
  out.euler_number = -sum;
  const Rational chi = orbifold_euler_char(out.base);
  const bool spherical_base = spherical_by_list(out.base);
  if (!spherical_base) {
    out.geometry = Geometry::NotSpherical;
    out.reason = "base " + out.base.to_string() + " is not spherical (orbifold Euler characteristic " +
                 rational_string(chi) + ")";
  } else if (out.euler_number == 0) {
    out.geometry = Geometry::NotSpherical;
    out.reason = "Euler number is 0";
  } else {
    out.geometry = Geometry::Spherical;
    out.reason = "base " + out.base.to_string() + " is spherical (orbifold Euler characteristic " +
                 rational_string(chi) + ") and Euler number " + rational_string(out.euler_number) + " is nonzero";
  }
  return out;
}

VirtualFibrationVerdict verdict(const MontesinosLink& link) {
  const SeifertClassification c = classify(link);
  VirtualFibrationVerdict v;
  v.input = "montesinos " + link.to_string();
  v.metadata.emplace_back("base", c.base.to_string());
  v.metadata.emplace_back("orbifold_euler_char", rational_string(orbifold_euler_char(c.base)));
  v.metadata.emplace_back("euler_number", rational_string(c.euler_number));
  v.metadata.emplace_back("euler_number_convention", "-(e0 + sum beta_i/alpha_i)");
  v.metadata.emplace_back("geometry", to_string(c.geometry));
  if (c.base.cone_orders.size() <= 2) v.metadata.emplace_back("note", "at most two cone points: two-bridge, lens space double cover");
  if (c.geometry == Geometry::Spherical) {
    v.status = FibrationStatus::VirtuallyFibered;
    v.evidence = "double branched cover is spherical (" + c.reason +
                 "); its pre-image link is realizable as a great circle link, whose complement is fibered";
  } else {
    v.status = FibrationStatus::OutOfScope;
    v.evidence = c.reason;
  }
  return v;
}

}  // namespace montesinos
}  // namespace gclink
