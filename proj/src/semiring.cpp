#include "tropk/semiring.hpp"

#include <algorithm>
#include <string>

namespace tropk {

TropScalar trop_add(const TropScalar& x, const TropScalar& y) {
  return x.value() <= y.value() ? x : y;
}

TropScalar trop_mul(const TropScalar& x, const TropScalar& y) {
  return TropScalar(Rational(x.value() + y.value()));
}

TropMatrix::TropMatrix(std::size_t rows, std::size_t cols)
    : TropMatrix(rows, cols, std::vector<TropScalar>(rows * cols)) {}

TropMatrix::TropMatrix(std::size_t rows, std::size_t cols, std::vector<TropScalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix must have at least one row and column");
  if (data_.size() != rows_ * cols_) throw DimensionError("entry count does not match shape");
}

TropMatrix::TropMatrix(std::initializer_list<std::initializer_list<TropScalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw DimensionError("matrix must have at least one row and column");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

TropMatrix TropMatrix::transpose() const {
  TropMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

TropMatrix TropMatrix::submatrix(const std::vector<std::size_t>& row_set,
                                 const std::vector<std::size_t>& col_set) const {
  TropMatrix s(row_set.size(), col_set.size());
  for (std::size_t i = 0; i < row_set.size(); ++i)
    for (std::size_t j = 0; j < col_set.size(); ++j) s(i, j) = (*this)(row_set[i], col_set[j]);
  return s;
}

TropMatrix TropMatrix::select_rows(const std::vector<std::size_t>& row_set) const {
  std::vector<std::size_t> all(cols_);
  for (std::size_t j = 0; j < cols_; ++j) all[j] = j;
  return submatrix(row_set, all);
}

TropMatrix TropMatrix::select_cols(const std::vector<std::size_t>& col_set) const {
  std::vector<std::size_t> all(rows_);
  for (std::size_t i = 0; i < rows_; ++i) all[i] = i;
  return submatrix(all, col_set);
}

TropMatrix trop_matmul(const TropMatrix& a, const TropMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("trop_matmul: " + std::to_string(a.cols()) + " columns vs " +
                         std::to_string(b.rows()) + " rows");
  }
  TropMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      TropScalar acc = trop_mul(a(i, 0), b(0, j));
      for (std::size_t k = 1; k < a.cols(); ++k) acc = trop_add(acc, trop_mul(a(i, k), b(k, j)));
      c(i, j) = acc;
    }
  }
  return c;
}

TropMatrix outer_sum(const std::vector<TropScalar>& a, const std::vector<TropScalar>& b) {
  TropMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = trop_mul(a[i], b[j]);
  return m;
}

Normalized normalize(const TropMatrix& a, Axis axis, std::vector<std::size_t> selected) {
  const std::size_t lines = axis == Axis::Rows ? a.rows() : a.cols();
  const std::size_t len = axis == Axis::Rows ? a.cols() : a.rows();
  if (selected.empty()) {
    selected.resize(lines);
    for (std::size_t k = 0; k < lines; ++k) selected[k] = k;
  }
  Normalized out{a, axis, std::vector<Rational>(lines, Rational(0))};
  auto entry = [&](std::size_t line, std::size_t k) -> TropScalar& {
    return axis == Axis::Rows ? out.matrix(line, k) : out.matrix(k, line);
  };
  for (std::size_t line : selected) {
    if (line >= lines) throw DimensionError("normalize: line index out of range");
    Rational lo = entry(line, 0).value();
    for (std::size_t k = 1; k < len; ++k) lo = std::min(lo, entry(line, k).value());
    out.offsets[line] = lo;
    for (std::size_t k = 0; k < len; ++k) entry(line, k) = Rational(entry(line, k).value() - lo);
  }
  return out;
}

TropMatrix denormalize(const Normalized& n) {
  TropMatrix m = n.matrix;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& off = n.axis == Axis::Rows ? n.offsets[i] : n.offsets[j];
      m(i, j) = Rational(m.at(i, j) + off);
    }
  }
  return m;
}

bool ZeroPattern::is_zero(std::size_t i, std::size_t j) const {
  return std::find(positions.begin(), positions.end(), std::pair{i, j}) != positions.end();
}

ZeroPattern zero_pattern(const TropMatrix& a) {
  ZeroPattern z;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) == 0) z.positions.emplace_back(i, j);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) zeros += a.at(i, j) == 0;
    if (zeros >= 2) z.twin_columns.push_back(j);
  }
  return z;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t t = i; t < k; ++t) cur[t] = cur[t - 1] + 1;
  }
  return out;
}

}  // namespace tropk
