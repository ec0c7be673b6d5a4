#include "lacuna/linalg.hpp"

#include <algorithm>

#include "lacuna/error.hpp"

namespace lacuna {

namespace {

// Integer row stored from its first nonzero column onward.
struct SparseRow {
  std::size_t first = 0;
  std::vector<Integer> values;

  [[nodiscard]] bool empty() const noexcept { return values.empty(); }
  [[nodiscard]] std::size_t last() const noexcept { return first + values.size() - 1; }
  [[nodiscard]] const Integer& lead() const { return values.front(); }

  [[nodiscard]] Integer at(std::size_t col) const {
    if (empty() || col < first || col > last()) return 0;
    return values[col - first];
  }
};

// Strips zero ends and divides by the content.
void make_primitive(SparseRow& row) {
  auto& v = row.values;
  const auto nz = [](const Integer& e) { return e != 0; };
  const auto head = std::ranges::find_if(v, nz);
  if (head == v.end()) {
    v.clear();
    return;
  }
  const auto tail = std::find_if(v.rbegin(), v.rend(), nz).base();
  row.first += static_cast<std::size_t>(head - v.begin());
  v = std::vector<Integer>(std::make_move_iterator(head), std::make_move_iterator(tail));
  Integer g = 0;
  for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  if (g != 1) {
    for (auto& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
  }
}

// Rows scaled to integers; scaling a row changes neither rank nor kernel.
std::vector<SparseRow> integer_rows(const RationalMatrix& m) {
  std::vector<SparseRow> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    Integer den = 1;
    for (const auto& e : row) {
      if (e != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den_mpz_t());
    }
    SparseRow out;
    out.values.reserve(row.size());
    for (const auto& e : row) out.values.push_back(e == 0 ? Integer(0) : e.get_num() * (den / e.get_den()));
    make_primitive(out);
    rows.push_back(std::move(out));
  }
  return rows;
}

// target <- pivot.lead * target - target.lead * pivot; both start at the same column.
void eliminate(SparseRow& target, const SparseRow& pivot) {
  const Integer a = pivot.lead();
  const Integer b = target.lead();
  const std::size_t last = std::max(target.last(), pivot.last());
  std::vector<Integer> out(last - target.first + 1);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t col = target.first + j;
    out[j] = a * target.at(col) - b * pivot.at(col);
  }
  target.values = std::move(out);
  make_primitive(target);
}

RankNullspace banded_path(const RationalMatrix& m) {
  const std::size_t cols = m.cols();
  std::vector<SparseRow> rows = integer_rows(m);
  std::erase_if(rows, [](const SparseRow& r) { return r.empty(); });

  // Invariant: every row at or after `rank` is zero left of column c.
  std::vector<SparseRow> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p].first != c) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rank], rows[p]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i].first != c) continue;
      eliminate(rows[i], rows[rank]);
      if (rows[i].empty()) rows[i].first = cols;
    }
    ++rank;
  }
  rows.resize(rank);

  RankNullspace out;
  out.rank = rank;
  std::vector<bool> is_pivot(cols, false);
  for (const auto& row : rows) {
    out.pivot_columns.push_back(row.first);
    is_pivot[row.first] = true;
  }

  // Free-variable basis by back substitution: v[f] = 1, other free columns 0.
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (std::size_t i = rank; i-- > 0;) {
      const SparseRow& row = rows[i];
      if (row.first > f) continue;
      Rational sum = 0;
      for (std::size_t j = 1; j < row.values.size(); ++j) {
        const Rational& x = v[row.first + j];
        if (x != 0 && row.values[j] != 0) sum += Rational(row.values[j]) * x;
      }
      if (sum != 0) v[row.first] = -sum / Rational(row.lead());
    }
    out.basis.push_back(normalize_primitive(v));
  }
  return out;
}

RankNullspace dense_path(const RationalMatrix& m) {
  const std::size_t n_rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<Integer>> a(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    Integer den = 1;
    for (const auto& e : m.row(i)) {
      if (e != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den_mpz_t());
    }
    a[i].reserve(cols);
    for (const auto& e : m.row(i)) a[i].push_back(e.get_num() * (den / e.get_den()));
  }

  // Fraction-free Gauss-Jordan: after each step every pivot entry equals the
  // current leading minor `prev` and all divisions are exact.
  Integer prev = 1;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
  Integer q, rem;
  for (std::size_t c = 0; c < cols && rank < n_rows; ++c) {
    std::size_t p = rank;
    while (p < n_rows && a[p][c] == 0) ++p;
    if (p == n_rows) continue;
    std::swap(a[rank], a[p]);
    const Integer piv = a[rank][c];
    for (std::size_t i = 0; i < n_rows; ++i) {
      if (i == rank) continue;
      const Integer factor = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) {
        q = piv * a[i][j] - factor * a[rank][j];
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), q.get_mpz_t(), prev.get_mpz_t());
        if (rem != 0) throw Error(ErrorCode::VerificationFailure, "inexact fraction-free division");
        a[i][j] = q;
      }
    }
    prev = piv;
    pivot_cols.push_back(c);
    ++rank;
  }

  RankNullspace out;
  out.rank = rank;
  out.pivot_columns = pivot_cols;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = Rational(prev);
    for (std::size_t i = 0; i < rank; ++i) v[pivot_cols[i]] = Rational(-a[i][f]);
    out.basis.push_back(normalize_primitive(v));
  }
  return out;
}

}  // namespace

RankNullspace rank_and_nullspace(const RationalMatrix& m, EliminationPath path) {
  return path == EliminationPath::Dense ? dense_path(m) : banded_path(m);
}

KernelBasis finite_support_kernel(const OperatorSpec& op, const Window& w, EliminationPath path) {
  const RankNullspace rn =
      rank_and_nullspace(window_matrix(op, w, WindowMode::SupportConfined), path);
  KernelBasis out{w, {}};
  for (const auto& v : rn.basis) {
    const auto sol = FiniteSolution::from_window_vector(w.lo, v);
    if (!sol || !is_global_solution_finite(op, *sol)) {
      throw Error(ErrorCode::VerificationFailure,
                  "kernel vector on [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                      "] is not a global solution");
    }
    out.vectors.push_back(v);
  }
  return out;
}

std::int64_t free_kernel_dim(const OperatorSpec& op, const Window& w) {
  if (w.hi - w.lo < op.order()) {
    throw Error(ErrorCode::WindowTooSmall,
                "window of " + std::to_string(w.size()) + " indices is shorter than order + 1");
  }
  const auto rn = rank_and_nullspace(window_matrix(op, w, WindowMode::FreeBoundary));
  return static_cast<std::int64_t>(rn.basis.size());
}

std::vector<std::int64_t> projection_dims(const OperatorSpec& op, std::int64_t ray_start,
                                          std::int64_t max_prefix, std::int64_t horizon) {
  if (max_prefix < 1 || horizon < max_prefix) {
    precondition_failed("projection_dims needs horizon >= max_prefix >= 1");
  }
  const Window w(ray_start, ray_start + horizon - 1);
  const auto kernel = rank_and_nullspace(window_matrix(op, w, WindowMode::LeftConfined)).basis;

  std::vector<std::int64_t> dims;
  for (std::int64_t i = 1; i <= max_prefix; ++i) {
    RationalMatrix prefix(kernel.size(), static_cast<std::size_t>(i));
    for (std::size_t b = 0; b < kernel.size(); ++b) {
      for (std::int64_t j = 0; j < i; ++j) {
        prefix(b, static_cast<std::size_t>(j)) = kernel[b][static_cast<std::size_t>(j)];
      }
    }
    dims.push_back(static_cast<std::int64_t>(rank_and_nullspace(prefix).rank));
  }
  return dims;
}

}  // namespace lacuna
