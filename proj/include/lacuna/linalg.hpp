#pragma once

#include <cstdint>
#include <vector>

#include "lacuna/matrix.hpp"
#include "lacuna/operator.hpp"

namespace lacuna {

enum class EliminationPath {
  Banded,  // sparse-row elimination; row operations stay inside each row's span
  Dense,   // fraction-free Gauss-Jordan over the full matrix
};

struct RankNullspace {
  std::size_t rank = 0;
  /// One vector per free column, in column order. Each vector has integer
  /// entries, content 1 and a positive first nonzero entry.
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> pivot_columns;
};

/// Exact rank and nullspace. Pivots are chosen by leftmost column, first
/// nonzero row, so both paths return identical results.
[[nodiscard]] RankNullspace rank_and_nullspace(const RationalMatrix& m,
                                               EliminationPath path = EliminationPath::Banded);

struct KernelBasis {
  Window window;
  std::vector<std::vector<Rational>> vectors;  // length window.size() each

  [[nodiscard]] std::size_t dimension() const noexcept { return vectors.size(); }
};

/// Basis of the global solutions supported inside `w`. Every vector is
/// re-verified as a global solution; a failure throws
/// Error(VerificationFailure).
[[nodiscard]] KernelBasis finite_support_kernel(const OperatorSpec& op, const Window& w,
                                                EliminationPath path = EliminationPath::Banded);

/// Nullity of the free-boundary system on `w`. Throws Error(WindowTooSmall)
/// when the window holds fewer than order + 1 indices.
[[nodiscard]] std::int64_t free_kernel_dim(const OperatorSpec& op, const Window& w);

/// For i = 1..max_prefix, the dimension of the projection onto
/// [ray_start, ray_start + i - 1] of the sequences on
/// [ray_start, ray_start + horizon - 1] that vanish left of ray_start and
/// satisfy every equation visible in that window. This bounds the dimension
/// of the corresponding projection of the ray-supported solution space from
/// above and never increases with `horizon`.
[[nodiscard]] std::vector<std::int64_t> projection_dims(const OperatorSpec& op,
                                                        std::int64_t ray_start,
                                                        std::int64_t max_prefix,
                                                        std::int64_t horizon);

}  // namespace lacuna
