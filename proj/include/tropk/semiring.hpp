#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tropk/rational.hpp"

namespace tropk {

/// Element of the min-plus semiring over the rationals. There is no
/// infinity element.
class TropScalar {
 public:
  TropScalar() = default;
  TropScalar(const Rational& v) : value_(v) { value_.canonicalize(); }  // NOLINT: implicit by intent
  TropScalar(long v) : value_(v) {}              // NOLINT
  TropScalar(int v) : value_(v) {}               // NOLINT

  const Rational& value() const { return value_; }

  friend bool operator==(const TropScalar& a, const TropScalar& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const TropScalar& a, const TropScalar& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_{0};
};

/// x (+) y = min(x, y)
TropScalar trop_add(const TropScalar& x, const TropScalar& y);
/// x (.) y = x + y
TropScalar trop_mul(const TropScalar& x, const TropScalar& y);

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class TropMatrix {
 public:
  TropMatrix() = default;
  TropMatrix(std::size_t rows, std::size_t cols);
  TropMatrix(std::size_t rows, std::size_t cols, std::vector<TropScalar> entries);
  TropMatrix(std::initializer_list<std::initializer_list<TropScalar>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const TropScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  TropScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  /// Value of entry (i, j) as a rational.
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j].value(); }

  TropMatrix transpose() const;
  TropMatrix submatrix(const std::vector<std::size_t>& row_set,
                       const std::vector<std::size_t>& col_set) const;
  TropMatrix select_rows(const std::vector<std::size_t>& row_set) const;
  TropMatrix select_cols(const std::vector<std::size_t>& col_set) const;

  friend bool operator==(const TropMatrix&, const TropMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<TropScalar> data_;
};

TropMatrix trop_matmul(const TropMatrix& a, const TropMatrix& b);

/// M_ij = a_i + b_j
TropMatrix outer_sum(const std::vector<TropScalar>& a, const std::vector<TropScalar>& b);

enum class Axis { Rows, Cols };

struct Normalized {
  TropMatrix matrix;
  Axis axis;
  /// Per line of the chosen axis; zero for lines outside the selected set.
  std::vector<Rational> offsets;
};

/// Subtracts from every selected line its minimum, so it has minimum 0.
/// An empty selection means all lines of the axis.
Normalized normalize(const TropMatrix& a, Axis axis, std::vector<std::size_t> selected = {});

/// Inverse of normalize.
TropMatrix denormalize(const Normalized& n);

struct ZeroPattern {
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  /// Columns with at least two zero entries.
  std::vector<std::size_t> twin_columns;

  bool is_zero(std::size_t i, std::size_t j) const;
};

ZeroPattern zero_pattern(const TropMatrix& a);

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

}  // namespace tropk
