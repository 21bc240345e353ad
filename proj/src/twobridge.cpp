#include "gclink/twobridge.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "gclink/errors.hpp"

namespace gclink {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = floor_mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    const std::int64_t r2 = r0 - k * r1;
    const std::int64_t s2 = s0 - k * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  return floor_mod(s0, m);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidInput("cannot parse fraction '" + std::string(whole) + "'");
  }
  return value;
}

bool dfs(const Rational& x, int depth_left, std::vector<int>& signs, bool& complete) {
  if (x == 0) return true;
  if (depth_left == 0) {
    complete = false;
    return false;
  }
  const Rational inverse = 1 / x;
  for (int s : {1, -1}) {
    const Rational residual = inverse - 2 * s;
    if (abs(residual) >= 1) continue;  // a tail expansion always has |value| < 1
    signs.push_back(s);
    if (dfs(residual, depth_left - 1, signs, complete)) return true;
    signs.pop_back();
  }
  return false;
}

}  // namespace

TwoBridgeFraction TwoBridgeFraction::make(std::int64_t p, std::int64_t q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q == 0) {
    if (p == 1 || p == -1) return TwoBridgeFraction(1, 0);
    throw InvalidInput("gcd(" + std::to_string(p) + ", 0) != 1");
  }
  if (q == 1) throw InvalidInput("p/1 is the unknot; two-bridge fractions need q >= 2");
  if (std::gcd(p, q) != 1) {
    throw InvalidInput("gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
  }
  return TwoBridgeFraction(floor_mod(p, q), q);
}

TwoBridgeFraction TwoBridgeFraction::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw InvalidInput("expected p/q, got '" + std::string(text) + "'");
  return make(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

Rational EvenContinuedFraction::value() const {
  Rational v = 0;
  for (auto it = signs.rbegin(); it != signs.rend(); ++it) v = 1 / (2 * *it + v);
  return v;
}

std::string EvenContinuedFraction::to_string() const {
  if (signs.empty()) return "0";
  std::string out;
  for (int s : signs) out += s > 0 ? "1/(2 + " : "1/(-2 + ";
  // The innermost term has no tail: drop its " + " and close all parentheses.
  out.resize(out.size() - 3);
  out += std::string(signs.size(), ')');
  return out;
}

std::string to_string(FibrationStatus s) {
  switch (s) {
    case FibrationStatus::Fibered:
      return "FIBERED";
    case FibrationStatus::VirtuallyFibered:
      return "VIRTUALLY_FIBERED";
    case FibrationStatus::OutOfScope:
      return "OUT_OF_SCOPE";
  }
  return "?";
}

namespace twobridge {

bool schubert_equivalent(const TwoBridgeFraction& a, const TwoBridgeFraction& b) {
  if (a.is_trivial_link() || b.is_trivial_link()) return a == b;
  if (a.q() != b.q()) return false;
  const std::int64_t q = a.q();
  const std::int64_t p1 = a.p(), p2 = b.p();
  return floor_mod(p2 - p1, q) == 0 || floor_mod(p2 + p1, q) == 0 || floor_mod(p1 * p2 - 1, q) == 0 ||
         floor_mod(p1 * p2 + 1, q) == 0;
}

std::vector<TwoBridgeFraction> equivalence_class(const TwoBridgeFraction& f) {
  if (f.is_trivial_link()) return {f};
  const std::int64_t q = f.q();
  const std::int64_t inv = inverse_mod(f.p(), q);
  std::vector<TwoBridgeFraction> out;
  for (std::int64_t p : {f.p(), q - f.p(), inv, q - inv}) out.push_back(TwoBridgeFraction::make(p, q));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<EvenContinuedFraction> expand_pm2(const Rational& x, int max_depth, bool* complete) {
  bool done = true;
  EvenContinuedFraction cf;
  const bool found = abs(x) < 1 && dfs(x, max_depth, cf.signs, done);
  if (complete) *complete = done;
  if (!found) return std::nullopt;
  return cf;
}

Pm2Search search_pm2_expansion(const TwoBridgeFraction& f, std::optional<int> max_depth) {
  if (f.is_trivial_link()) throw OutOfScope("1/0 is the trivial two component link; it is excluded");
  Pm2Search search;
  search.max_depth = max_depth.value_or(static_cast<int>(2 * f.q()));
  for (const auto& member : equivalence_class(f)) {
    bool complete = true;
    auto cf = expand_pm2(member.value(), search.max_depth, &complete);
    search.complete = search.complete && complete;
    if (cf) {
      search.found = Pm2Expansion{member, std::move(*cf)};
      search.complete = true;
      break;
    }
  }
  return search;
}

std::optional<Pm2Expansion> find_pm2_expansion(const TwoBridgeFraction& f, std::optional<int> max_depth) {
  return search_pm2_expansion(f, max_depth).found;
}

VirtualFibrationVerdict verdict(const TwoBridgeFraction& f, std::optional<int> max_depth) {
  VirtualFibrationVerdict v;
  v.input = "two-bridge " + f.to_string();
  if (f.is_trivial_link()) {
    v.status = FibrationStatus::OutOfScope;
    v.evidence = "trivial two component link";
    return v;
  }
  v.metadata.emplace_back("kind", f.is_knot() ? "knot" : "link");
  v.metadata.emplace_back("criterion", "fibered iff some Schubert-equivalent fraction has a +-2 continued fraction");
  const Pm2Search search = search_pm2_expansion(f, max_depth);
  v.metadata.emplace_back("search_max_depth", std::to_string(search.max_depth));
  v.metadata.emplace_back("search_complete", search.complete ? "true" : "false");
  if (search.found) {
    v.status = FibrationStatus::Fibered;
    v.expansion = search.found;
    v.evidence = search.found->member.to_string() + " = " + search.found->expansion.to_string();
    return v;
  }
  v.status = FibrationStatus::VirtuallyFibered;
  v.cover = covering_certificate(f.p(), f.q());
  v.cover_name = "D_{" + f.to_string() + "}";
  v.cover_degree = v.cover->total_degree;
  v.evidence = (search.complete ? std::string("no +-2 expansion in the Schubert class; ")
                                : "fiberedness undetermined at depth " + std::to_string(search.max_depth) + "; ") +
               "covered by the great circle link complement S^3 - " + v.cover_name + " of degree " +
               std::to_string(v.cover_degree);
  return v;
}

}  // namespace twobridge
}  // namespace gclink
