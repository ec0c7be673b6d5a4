#include "lacuna/operator.hpp"

#include <algorithm>
#include <numeric>

#include "lacuna/error.hpp"

namespace lacuna {

OperatorSpec::OperatorSpec(std::vector<SequenceSpec> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) precondition_failed("an operator needs order + 1 >= 1 coefficients");
}

OperatorSpec OperatorSpec::zero(std::int64_t order) {
  if (order < 0) precondition_failed("order must be non-negative");
  return OperatorSpec(std::vector<SequenceSpec>(static_cast<std::size_t>(order + 1),
                                                SequenceSpec::zero()));
}

FiniteSolution::FiniteSolution(std::int64_t anchor, std::vector<Rational> values)
    : anchor_(anchor), values_(std::move(values)) {
  if (values_.empty() || values_.front() == 0 || values_.back() == 0) {
    precondition_failed("finite solution must be nonzero with nonzero first and last entries");
  }
}

std::optional<FiniteSolution> FiniteSolution::from_window_vector(std::int64_t lo,
                                                                 std::span<const Rational> v) {
  const auto nonzero = [](const Rational& e) { return e != 0; };
  const auto first = std::ranges::find_if(v, nonzero);
  if (first == v.end()) return std::nullopt;
  const auto last = std::find_if(v.rbegin(), v.rend(), nonzero).base();
  return FiniteSolution(lo + (first - v.begin()), std::vector<Rational>(first, last));
}

Rational FiniteSolution::operator()(std::int64_t n) const {
  if (n < min_support() || n > max_support()) return 0;
  return values_[static_cast<std::size_t>(n - anchor_)];
}

std::vector<std::int64_t> FiniteSolution::support() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0) out.push_back(anchor_ + static_cast<std::int64_t>(i));
  }
  return out;
}

SequenceSpec FiniteSolution::as_sequence() const {
  return SequenceSpec::finite_table(anchor_, values_, 0);
}

bool supports_disjoint(const FiniteSolution& a, const FiniteSolution& b) {
  if (a.max_support() < b.min_support() || b.max_support() < a.min_support()) return true;
  const std::int64_t lo = std::max(a.min_support(), b.min_support());
  const std::int64_t hi = std::min(a.max_support(), b.max_support());
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (a(n) != 0 && b(n) != 0) return false;
  }
  return true;
}

ResidueMask::ResidueMask(std::int64_t modulus_, std::set<std::int64_t> allowed_)
    : modulus(modulus_), allowed(std::move(allowed_)) {
  if (modulus <= 0) precondition_failed("mask modulus must be positive");
  for (auto r : allowed) {
    if (r < 0 || r >= modulus) precondition_failed("mask residue outside [0, modulus)");
  }
}

ResidueMask ResidueMask::all(std::int64_t modulus) {
  std::set<std::int64_t> every;
  for (std::int64_t r = 0; r < modulus; ++r) every.insert(r);
  return {modulus, std::move(every)};
}

namespace {

// Residues mod mu of the progression start + step * t, t in Z.
void add_progression(std::set<std::int64_t>& out, std::int64_t start, std::int64_t step,
                     std::int64_t mu) {
  for (std::int64_t t = 0; t < mu; ++t) {
    out.insert(floor_mod(floor_mod(start, mu) + floor_mod(step, mu) * t, mu));
  }
}

struct MaskInference {
  std::int64_t mu;

  std::set<std::int64_t> operator()(const FiniteTable& t) const {
    if (t.fallback != 0) return ResidueMask::all(mu).allowed;
    std::set<std::int64_t> out;
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      if (t.values[i] != 0) out.insert(floor_mod(t.anchor + static_cast<std::int64_t>(i), mu));
    }
    return out;
  }
  std::set<std::int64_t> operator()(const Periodic& p) const {
    std::set<std::int64_t> out;
    for (std::int64_t j = 0; j < p.period; ++j) {
      if (p.values[static_cast<std::size_t>(j)] != 0) add_progression(out, p.offset + j, p.period, mu);
    }
    return out;
  }
  std::set<std::int64_t> operator()(const ResiduePolynomial& r) const {
    // A nonzero polynomial has finitely many roots, so it is nonzero somewhere
    // on every residue class mod mu compatible with its own class.
    std::set<std::int64_t> out;
    for (const auto& [residue, poly] : r.per_class) {
      if (!poly.is_zero()) add_progression(out, residue, r.modulus, mu);
    }
    return out;
  }
  std::set<std::int64_t> operator()(const GeometricSupport& g) const {
    std::set<std::int64_t> out;
    if (g.value == 0) return out;
    // scale * 2^m mod mu is eventually periodic with pre-period below 64 and
    // period at most mu.
    std::int64_t term = floor_mod(g.scale, mu);
    for (std::int64_t m = 0; m < mu + 64; ++m) {
      out.insert(floor_mod(term + floor_mod(g.shift, mu), mu));
      term = floor_mod(term * 2, mu);
    }
    if (g.allow_negative_exponent) {
      for (std::int64_t s = g.scale; s % 2 == 0;) {
        s /= 2;
        out.insert(floor_mod(s + g.shift, mu));
      }
    }
    return out;
  }
};

}  // namespace

ResidueMask infer_mask(const SequenceSpec& spec, std::int64_t modulus) {
  if (modulus <= 0) precondition_failed("mask modulus must be positive");
  return {modulus, std::visit(MaskInference{modulus}, spec.variant())};
}

Rational residual(const OperatorSpec& op, const SequenceSpec& x, std::int64_t n) {
  Rational sum = 0;
  for (std::int64_t k = 0; k <= op.order(); ++k) {
    const Rational a = op.coeff(k)(n);
    if (a != 0) sum += a * x(n + k);
  }
  return sum;
}

Rational residual(const OperatorSpec& op, const FiniteSolution& x, std::int64_t n) {
  Rational sum = 0;
  for (std::int64_t k = 0; k <= op.order(); ++k) {
    const Rational v = x(n + k);
    if (v != 0) sum += op.coeff(k)(n) * v;
  }
  return sum;
}

std::optional<std::int64_t> first_residual_failure(const OperatorSpec& op, const SequenceSpec& x,
                                                   const Window& w) {
  for (std::int64_t n = w.lo; n <= w.hi - op.order(); ++n) {
    if (residual(op, x, n) != 0) return n;
  }
  return std::nullopt;
}

bool is_global_solution_finite(const OperatorSpec& op, const FiniteSolution& x) {
  for (std::int64_t n = x.min_support() - op.order(); n <= x.max_support(); ++n) {
    if (residual(op, x, n) != 0) return false;
  }
  return true;
}

ResidueCertificate residue_certificate(const OperatorSpec& op,
                                       const std::vector<ResidueMask>& coeff_masks,
                                       const ResidueMask& solution_mask,
                                       const SequenceSpec* solution) {
  if (static_cast<std::int64_t>(coeff_masks.size()) != op.order() + 1) {
    precondition_failed("need one coefficient mask per coefficient");
  }
  const auto check_claim = [](const SequenceSpec& spec, const ResidueMask& claim,
                              const std::string& what) {
    const ResidueMask actual = infer_mask(spec, claim.modulus);
    for (auto r : actual.allowed) {
      if (!claim.allowed.contains(r)) {
        throw Error(ErrorCode::MaskViolation,
                    what + " is nonzero on residue " + std::to_string(r) + " mod " +
                        std::to_string(claim.modulus) + ", which its mask excludes");
      }
    }
  };

  ResidueCertificate cert;
  cert.modulus = solution_mask.modulus;
  for (std::int64_t k = 0; k <= op.order(); ++k) {
    const auto& mask = coeff_masks[static_cast<std::size_t>(k)];
    check_claim(op.coeff(k), mask, "coefficient a_" + std::to_string(k));
    cert.modulus = std::lcm(cert.modulus, mask.modulus);
  }
  if (solution != nullptr) check_claim(*solution, solution_mask, "solution");

  for (std::int64_t k = 0; k <= op.order(); ++k) {
    const auto& mask = coeff_masks[static_cast<std::size_t>(k)];
    for (std::int64_t rho = 0; rho < cert.modulus; ++rho) {
      if (mask.admits(rho) && solution_mask.admits(rho + k)) {
        cert.collision = ResidueCollision{k, rho};
        return cert;
      }
    }
  }
  return cert;
}

std::int64_t first_row_index(const OperatorSpec& op, const Window& w, WindowMode mode) noexcept {
  return mode == WindowMode::FreeBoundary ? w.lo : w.lo - op.order();
}

RationalMatrix window_matrix(const OperatorSpec& op, const Window& w, WindowMode mode) {
  const std::int64_t r = op.order();
  const std::int64_t row_lo = first_row_index(op, w, mode);
  const std::int64_t row_hi = mode == WindowMode::SupportConfined ? w.hi : w.hi - r;
  const std::int64_t rows = std::max<std::int64_t>(0, row_hi - row_lo + 1);

  RationalMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(w.size()));
  for (std::int64_t i = 0; i < rows; ++i) {
    const std::int64_t n = row_lo + i;
    for (std::int64_t k = 0; k <= r; ++k) {
      const std::int64_t col = n + k;
      if (!w.contains(col)) continue;
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(col - w.lo)) = op.coeff(k)(n);
    }
  }
  return m;
}

}  // namespace lacuna
