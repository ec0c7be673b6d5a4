#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lacuna {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "p/q" form: q > 0, gcd(p, q) = 1, zero is "0/1".
[[nodiscard]] std::string to_string(const Rational& value);

/// Accepts "p/q" or a bare integer "p"; the result is canonicalized.
/// Throws Error(ParseError) on malformed input or a zero denominator.
[[nodiscard]] Rational parse_rational(std::string_view text);

[[nodiscard]] inline Integer to_integer(std::int64_t v) {
  Integer out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

[[nodiscard]] inline Rational to_rational(std::int64_t v) { return Rational(to_integer(v)); }

/// Mathematical modulus, always in [0, m).
[[nodiscard]] constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t m) noexcept {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Scales a rational vector to integers with content 1 and a positive first
/// nonzero entry. The zero vector is returned unchanged.
[[nodiscard]] std::vector<Rational> normalize_primitive(std::span<const Rational> v);

}  // namespace lacuna
