#include "lacuna/matrix.hpp"

#include "lacuna/error.hpp"

namespace lacuna {

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) precondition_failed("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

std::vector<Rational> RationalMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) precondition_failed("vector length does not match column count");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Rational& a = (*this)(i, j);
      if (a != 0 && v[j] != 0) out[i] += a * v[j];
    }
  }
  return out;
}

}  // namespace lacuna
