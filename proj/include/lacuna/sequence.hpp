#pragma once

#include <cstdint>
#include <map>
#include <variant>
#include <vector>

#include "lacuna/rational.hpp"

namespace lacuna {

/// Inclusive integer interval [lo, hi].
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  Window() = default;
  Window(std::int64_t lo_, std::int64_t hi_);

  [[nodiscard]] std::int64_t size() const noexcept { return hi - lo + 1; }
  [[nodiscard]] bool contains(std::int64_t n) const noexcept { return lo <= n && n <= hi; }
  [[nodiscard]] bool contains(const Window& other) const noexcept {
    return lo <= other.lo && other.hi <= hi;
  }

  friend bool operator==(const Window&, const Window&) = default;
};

/// Polynomial in n with rational coefficients, lowest degree first.
struct Polynomial {
  std::vector<Rational> coeffs;

  [[nodiscard]] Rational operator()(std::int64_t n) const;
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

struct FiniteTable {
  std::int64_t anchor = 0;
  std::vector<Rational> values;
  Rational fallback;  // value outside the table

  friend bool operator==(const FiniteTable&, const FiniteTable&) = default;
};

struct Periodic {
  std::int64_t period = 1;
  std::vector<Rational> values;
  std::int64_t offset = 0;

  friend bool operator==(const Periodic&, const Periodic&) = default;
};

struct ResiduePolynomial {
  std::int64_t modulus = 1;
  std::map<std::int64_t, Polynomial> per_class;  // absent class is zero

  friend bool operator==(const ResiduePolynomial&, const ResiduePolynomial&) = default;
};

/// `value` at n = scale * 2^m + shift. Only m >= 0 unless
/// `allow_negative_exponent`, in which case negative m is admitted whenever
/// scale * 2^m is still an integer.
struct GeometricSupport {
  std::int64_t scale = 1;
  std::int64_t shift = 0;
  Rational value;
  bool allow_negative_exponent = false;

  friend bool operator==(const GeometricSupport&, const GeometricSupport&) = default;
};

/// A bi-infinite rational sequence given by a finite description. Immutable;
/// the factories validate the representation invariants.
class SequenceSpec {
 public:
  using Variant = std::variant<FiniteTable, Periodic, ResiduePolynomial, GeometricSupport>;

  static SequenceSpec finite_table(std::int64_t anchor, std::vector<Rational> values,
                                   Rational fallback = 0);
  static SequenceSpec periodic(std::int64_t period, std::vector<Rational> values,
                               std::int64_t offset = 0);
  static SequenceSpec constant(const Rational& value);
  static SequenceSpec residue_polynomial(std::int64_t modulus,
                                         std::map<std::int64_t, Polynomial> per_class);
  static SequenceSpec geometric_support(std::int64_t scale, std::int64_t shift, Rational value,
                                        bool allow_negative_exponent = false);
  static SequenceSpec zero() { return constant(0); }

  [[nodiscard]] const Variant& variant() const noexcept { return repr_; }

  [[nodiscard]] Rational operator()(std::int64_t n) const;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;

 private:
  explicit SequenceSpec(Variant repr) : repr_(std::move(repr)) {}
  Variant repr_;
};

struct SupportProfile {
  std::vector<std::int64_t> indices;  // strictly increasing
  std::vector<std::int64_t> gaps;     // indices[i+1] - indices[i]
};

[[nodiscard]] inline Rational eval(const SequenceSpec& spec, std::int64_t n) { return spec(n); }

[[nodiscard]] SupportProfile support_in_window(const SequenceSpec& spec, const Window& w);

/// True iff the support of `spec` on `w` has two consecutive elements at
/// distance >= min_gap. A finite witness only; lacunarity is a limit property.
[[nodiscard]] bool lacunarity_witness(const SequenceSpec& spec, const Window& w,
                                      std::int64_t min_gap);

/// Values of `spec` on every index of `w`, in order.
[[nodiscard]] std::vector<Rational> sample(const SequenceSpec& spec, const Window& w);

}  // namespace lacuna
