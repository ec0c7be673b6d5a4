#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "lacuna/matrix.hpp"
#include "lacuna/sequence.hpp"

namespace lacuna {

/// The operator x -> sum_{k=0}^{order} a_k(n) x(n + k).
class OperatorSpec {
 public:
  /// `coeffs[k]` is a_k; order is coeffs.size() - 1.
  explicit OperatorSpec(std::vector<SequenceSpec> coeffs);

  static OperatorSpec zero(std::int64_t order);

  [[nodiscard]] std::int64_t order() const noexcept {
    return static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  [[nodiscard]] const std::vector<SequenceSpec>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const SequenceSpec& coeff(std::int64_t k) const {
    return coeffs_.at(static_cast<std::size_t>(k));
  }

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;

 private:
  std::vector<SequenceSpec> coeffs_;
};

/// A sequence with finite support: values[i] sits at anchor + i, zero
/// elsewhere. The first and last stored values are nonzero.
class FiniteSolution {
 public:
  FiniteSolution(std::int64_t anchor, std::vector<Rational> values);

  /// Trims zeros from a vector whose first entry sits at `lo`; nullopt when
  /// the vector is identically zero.
  static std::optional<FiniteSolution> from_window_vector(std::int64_t lo,
                                                          std::span<const Rational> v);

  [[nodiscard]] std::int64_t anchor() const noexcept { return anchor_; }
  [[nodiscard]] const std::vector<Rational>& values() const noexcept { return values_; }
  [[nodiscard]] std::int64_t min_support() const noexcept { return anchor_; }
  [[nodiscard]] std::int64_t max_support() const noexcept {
    return anchor_ + static_cast<std::int64_t>(values_.size()) - 1;
  }
  [[nodiscard]] Window span() const { return {min_support(), max_support()}; }

  [[nodiscard]] Rational operator()(std::int64_t n) const;
  [[nodiscard]] std::vector<std::int64_t> support() const;
  [[nodiscard]] SequenceSpec as_sequence() const;

  friend bool operator==(const FiniteSolution&, const FiniteSolution&) = default;

 private:
  std::int64_t anchor_;
  std::vector<Rational> values_;
};

[[nodiscard]] bool supports_disjoint(const FiniteSolution& a, const FiniteSolution& b);

/// Residues allowed modulo `modulus`. An empty set denotes the zero sequence.
struct ResidueMask {
  std::int64_t modulus = 1;
  std::set<std::int64_t> allowed;

  ResidueMask() = default;
  ResidueMask(std::int64_t modulus_, std::set<std::int64_t> allowed_);

  static ResidueMask all(std::int64_t modulus);

  [[nodiscard]] bool admits(std::int64_t n) const noexcept {
    return allowed.contains(floor_mod(n, modulus));
  }

  friend bool operator==(const ResidueMask&, const ResidueMask&) = default;
};

/// Smallest mask modulo `modulus` containing the support of `spec`, derived
/// exactly from the representation.
[[nodiscard]] ResidueMask infer_mask(const SequenceSpec& spec, std::int64_t modulus);

[[nodiscard]] Rational residual(const OperatorSpec& op, const SequenceSpec& x, std::int64_t n);
[[nodiscard]] Rational residual(const OperatorSpec& op, const FiniteSolution& x, std::int64_t n);

/// Checks every equation whose terms lie inside the window, n in
/// [w.lo, w.hi - order]. Returns the first failing n.
[[nodiscard]] std::optional<std::int64_t> first_residual_failure(const OperatorSpec& op,
                                                                 const SequenceSpec& x,
                                                                 const Window& w);

/// Complete check on all of Z: only equations n in
/// [minSupp - order, maxSupp] can touch the support.
[[nodiscard]] bool is_global_solution_finite(const OperatorSpec& op, const FiniteSolution& x);

struct ResidueCollision {
  std::int64_t k;        // coefficient index
  std::int64_t residue;  // n mod lcm at which a_k(n) x(n+k) may be nonzero
};

struct ResidueCertificate {
  std::int64_t modulus = 1;  // lcm of all mask moduli
  std::optional<ResidueCollision> collision;

  [[nodiscard]] bool certified() const noexcept { return !collision.has_value(); }
};

/// Certifies L(x) = 0 on Z for every x supported in `solution_mask`, by
/// residue disjointness of each product term a_k(n) x(n + k). The claimed
/// coefficient masks (and the solution, when given) are verified against
/// their representations; a contradiction throws Error(MaskViolation).
[[nodiscard]] ResidueCertificate residue_certificate(
    const OperatorSpec& op, const std::vector<ResidueMask>& coeff_masks,
    const ResidueMask& solution_mask, const SequenceSpec* solution = nullptr);

enum class WindowMode {
  SupportConfined,  // rows n in [lo - r, hi]; x is zero outside the window
  FreeBoundary,     // rows n in [lo, hi - r]; nothing assumed outside
  LeftConfined,     // rows n in [lo - r, hi - r]; x is zero left of the window
};

/// Columns are x(w.lo) .. x(w.hi); entry (n, m) = a_{m-n}(n) for 0 <= m-n <= r.
[[nodiscard]] RationalMatrix window_matrix(const OperatorSpec& op, const Window& w,
                                           WindowMode mode);

/// First equation index covered by the rows of window_matrix(op, w, mode).
[[nodiscard]] std::int64_t first_row_index(const OperatorSpec& op, const Window& w,
                                           WindowMode mode) noexcept;

}  // namespace lacuna
