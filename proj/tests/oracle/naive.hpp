#pragma once

// Test-only reference computations. Deliberately shares no code with the
// library: plain rational Gauss-Jordan and matrices written straight from
// the equation sum_k a_k(n) x(n+k) = 0.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Matrix = std::vector<std::vector<Q>>;
using Coefficient = std::function<Q(std::int64_t k, std::int64_t n)>;

struct Reduction {
  std::size_t rank = 0;
  std::vector<std::vector<Q>> nullspace;
};

/// Reduced row echelon form with rational division; pivot is the entry of
/// largest numerator magnitude in the column.
inline Reduction reduce(Matrix a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t best = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (a[i][c] != 0 && (best == rows || abs(a[i][c]) > abs(a[best][c]))) best = i;
    }
    if (best == rows) continue;
    std::swap(a[r], a[best]);
    const Q p = a[r][c];
    for (auto& e : a[r]) e /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Q f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  Reduction out;
  out.rank = r;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Q> v(cols, Q(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][f];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

/// Rows: equations n in [row_lo, row_hi]; columns: x(lo) .. x(hi).
inline Matrix equations(const Coefficient& a, std::int64_t order, std::int64_t lo, std::int64_t hi,
                        std::int64_t row_lo, std::int64_t row_hi) {
  Matrix m;
  for (std::int64_t n = row_lo; n <= row_hi; ++n) {
    std::vector<Q> row(static_cast<std::size_t>(hi - lo + 1), Q(0));
    for (std::int64_t k = 0; k <= order; ++k) {
      const std::int64_t col = n + k;
      if (col >= lo && col <= hi) row[static_cast<std::size_t>(col - lo)] += a(k, n);
    }
    m.push_back(std::move(row));
  }
  return m;
}

/// Dimension of the solutions supported inside [lo, hi].
inline std::size_t confined_nullity(const Coefficient& a, std::int64_t order, std::int64_t lo,
                                    std::int64_t hi) {
  const auto cols = static_cast<std::size_t>(hi - lo + 1);
  return cols - reduce(equations(a, order, lo, hi, lo - order, hi), cols).rank;
}

inline std::size_t free_nullity(const Coefficient& a, std::int64_t order, std::int64_t lo,
                                std::int64_t hi) {
  const auto cols = static_cast<std::size_t>(hi - lo + 1);
  return cols - reduce(equations(a, order, lo, hi, lo, hi - order), cols).rank;
}

/// c_k(n) = 1 iff (r+1) | (n+k).
inline Coefficient example1(std::int64_t r) {
  return [r](std::int64_t k, std::int64_t n) {
    const std::int64_t m = r + 1;
    return Q(((n + k) % m + m) % m == 0 ? 1 : 0);
  };
}

inline Coefficient fibonacci() {
  return [](std::int64_t k, std::int64_t) { return Q(k == 2 ? 1 : -1); };
}

}  // namespace oracle
