#include "lacuna/rational.hpp"

#include <algorithm>
#include <cctype>

#include "lacuna/error.hpp"

namespace lacuna {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::MaskViolation: return "MaskViolation";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::NotASolutionOnWindow: return "NotASolutionOnWindow";
    case ErrorCode::ZeroValueRejected: return "ZeroValueRejected";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string to_string(const Rational& value) {
  // mpq_class(p, q) is not canonicalized on construction.
  Rational c = value;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::ranges::all_of(s, [](unsigned char c) { return std::isdigit(c) != 0; });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw Error(ErrorCode::ParseError, "malformed rational \"" + std::string(whole) + "\"");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in \"" + std::string(text) + "\"");
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::vector<Rational> normalize_primitive(std::span<const Rational> v) {
  std::vector<Rational> out(v.begin(), v.end());
  Integer den_lcm = 1;
  for (const auto& e : v) {
    if (e != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.get_den_mpz_t());
  }
  Integer content = 0;
  for (const auto& e : v) {
    if (e == 0) continue;
    const Integer scaled = e.get_num() * (den_lcm / e.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
  }
  if (content == 0) return out;
  const auto lead = std::ranges::find_if(v, [](const Rational& e) { return e != 0; });
  if (sgn(*lead) < 0) content = -content;
  for (auto& e : out) {
    if (e == 0) continue;
    e = Rational(e.get_num() * (den_lcm / e.get_den()) / content);
  }
  return out;
}

}  // namespace lacuna
