#include "lacuna/sequence.hpp"

#include <bit>
#include <limits>

#include "lacuna/error.hpp"

namespace lacuna {

Window::Window(std::int64_t lo_, std::int64_t hi_) : lo(lo_), hi(hi_) {
  if (lo > hi) {
    precondition_failed("window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                        "] has lo > hi");
  }
}

Rational Polynomial::operator()(std::int64_t n) const {
  const Rational x = to_rational(n);
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool Polynomial::is_zero() const {
  for (const auto& c : coeffs) {
    if (c != 0) return false;
  }
  return true;
}

SequenceSpec SequenceSpec::finite_table(std::int64_t anchor, std::vector<Rational> values,
                                        Rational fallback) {
  if (values.empty()) precondition_failed("finite table needs at least one value");
  return SequenceSpec(FiniteTable{anchor, std::move(values), std::move(fallback)});
}

SequenceSpec SequenceSpec::periodic(std::int64_t period, std::vector<Rational> values,
                                    std::int64_t offset) {
  if (period <= 0) precondition_failed("period must be positive");
  if (static_cast<std::int64_t>(values.size()) != period) {
    precondition_failed("periodic sequence needs exactly `period` values");
  }
  return SequenceSpec(Periodic{period, std::move(values), offset});
}

SequenceSpec SequenceSpec::constant(const Rational& value) { return periodic(1, {value}); }

SequenceSpec SequenceSpec::residue_polynomial(std::int64_t modulus,
                                              std::map<std::int64_t, Polynomial> per_class) {
  if (modulus <= 0) precondition_failed("modulus must be positive");
  for (const auto& [residue, poly] : per_class) {
    if (residue < 0 || residue >= modulus) {
      precondition_failed("residue " + std::to_string(residue) + " outside [0, modulus)");
    }
  }
  return SequenceSpec(ResiduePolynomial{modulus, std::move(per_class)});
}

SequenceSpec SequenceSpec::geometric_support(std::int64_t scale, std::int64_t shift,
                                             Rational value, bool allow_negative_exponent) {
  if (scale <= 0) precondition_failed("scale must be positive");
  return SequenceSpec(GeometricSupport{scale, shift, std::move(value), allow_negative_exponent});
}

namespace {

bool is_power_of_two(std::int64_t v) {
  return v > 0 && std::has_single_bit(static_cast<std::uint64_t>(v));
}

bool on_geometric_support(const GeometricSupport& g, std::int64_t n) {
  if (n < g.shift) return false;
  // n - shift overflows only for pathological inputs near the int64 limits.
  const std::int64_t d = n - g.shift;
  if (d == 0) return false;
  if (d % g.scale == 0 && is_power_of_two(d / g.scale)) return true;
  // scale * 2^m with m < 0 is integral iff 2^{-m} divides scale.
  return g.allow_negative_exponent && g.scale % d == 0 && is_power_of_two(g.scale / d);
}

struct Evaluator {
  std::int64_t n;

  Rational operator()(const FiniteTable& t) const {
    const std::int64_t i = n - t.anchor;
    if (i >= 0 && i < static_cast<std::int64_t>(t.values.size())) {
      return t.values[static_cast<std::size_t>(i)];
    }
    return t.fallback;
  }
  Rational operator()(const Periodic& p) const {
    return p.values[static_cast<std::size_t>(floor_mod(n - p.offset, p.period))];
  }
  Rational operator()(const ResiduePolynomial& r) const {
    const auto it = r.per_class.find(floor_mod(n, r.modulus));
    return it == r.per_class.end() ? Rational(0) : it->second(n);
  }
  Rational operator()(const GeometricSupport& g) const {
    return on_geometric_support(g, n) ? g.value : Rational(0);
  }
};

}  // namespace

Rational SequenceSpec::operator()(std::int64_t n) const { return std::visit(Evaluator{n}, repr_); }

SupportProfile support_in_window(const SequenceSpec& spec, const Window& w) {
  SupportProfile out;
  if (const auto* g = std::get_if<GeometricSupport>(&spec.variant()); g && !g->allow_negative_exponent) {
    // Enumerate the closed form directly; windows can be much wider than the support.
    if (g->value != 0) {
      for (std::int64_t step = g->scale; step > 0; step *= 2) {
        const std::int64_t n = g->shift + step;
        if (n > w.hi) break;
        if (n >= w.lo) out.indices.push_back(n);
        if (step > std::numeric_limits<std::int64_t>::max() / 2) break;
      }
    }
  } else {
    for (std::int64_t n = w.lo; n <= w.hi; ++n) {
      if (spec(n) != 0) out.indices.push_back(n);
    }
  }
  for (std::size_t i = 1; i < out.indices.size(); ++i) {
    out.gaps.push_back(out.indices[i] - out.indices[i - 1]);
  }
  return out;
}

bool lacunarity_witness(const SequenceSpec& spec, const Window& w, std::int64_t min_gap) {
  if (min_gap <= 0) precondition_failed("gap threshold must be positive");
  for (auto gap : support_in_window(spec, w).gaps) {
    if (gap >= min_gap) return true;
  }
  return false;
}

std::vector<Rational> sample(const SequenceSpec& spec, const Window& w) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(w.size()));
  for (std::int64_t n = w.lo; n <= w.hi; ++n) out.push_back(spec(n));
  return out;
}

}  // namespace lacuna
