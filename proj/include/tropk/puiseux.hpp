#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropk/rational.hpp"

namespace tropk {

/// Dense univariate polynomial over Q, coefficients by ascending degree,
/// no trailing zero coefficient. The zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  static Poly monomial(std::size_t degree, const Rational& c);

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }
  /// Coefficient of s^k (zero beyond the degree).
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  /// Index of the lowest nonzero coefficient.
  std::size_t low_degree() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly shifted_up(std::size_t k) const;    // times s^k
  Poly shifted_down(std::size_t k) const;  // exact division by s^k
  /// p(s^k)
  Poly inflate(std::size_t k) const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic greatest common divisor (zero if both are zero).
Poly gcd(Poly a, Poly b);

struct FieldError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Element of Q(s) with s = tau^(1/N): s^shift * num(s) / den(s), where num
/// and den have nonzero constant terms, are coprime and den is monic.
/// ord is shift / N, orc is num(0) / den(0).
class PuiseuxScalar {
 public:
  PuiseuxScalar() = default;  // zero
  PuiseuxScalar(long c);      // NOLINT: constant, N = 1
  PuiseuxScalar(const Rational& c);  // NOLINT

  /// c * tau^a under ramification N; requires a*N integral and c != 0.
  static PuiseuxScalar monomial(const Rational& a, const Rational& c, std::int64_t ram = 1);
  /// s^shift * num / den, normalized.
  static PuiseuxScalar from_parts(std::int64_t shift, Poly num, Poly den, std::int64_t ram);

  bool is_zero() const { return num_.is_zero(); }
  std::int64_t ramification() const { return ram_; }
  std::int64_t shift() const { return shift_; }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  Rational ord() const;
  Rational orc() const;

  /// Same element written over a multiple of the ramification.
  PuiseuxScalar with_ramification(std::int64_t ram) const;

  PuiseuxScalar operator-() const;
  PuiseuxScalar inverse() const;
  friend PuiseuxScalar operator+(const PuiseuxScalar& a, const PuiseuxScalar& b);
  friend PuiseuxScalar operator-(const PuiseuxScalar& a, const PuiseuxScalar& b);
  friend PuiseuxScalar operator*(const PuiseuxScalar& a, const PuiseuxScalar& b);
  friend PuiseuxScalar operator/(const PuiseuxScalar& a, const PuiseuxScalar& b);
  PuiseuxScalar& operator+=(const PuiseuxScalar& o) { return *this = *this + o; }
  PuiseuxScalar& operator-=(const PuiseuxScalar& o) { return *this = *this - o; }
  PuiseuxScalar& operator*=(const PuiseuxScalar& o) { return *this = *this * o; }

  friend bool operator==(const PuiseuxScalar& a, const PuiseuxScalar& b);

  std::string to_string() const;

 private:
  std::int64_t shift_ = 0;
  Poly num_;
  Poly den_ = Poly::constant(1);
  std::int64_t ram_ = 1;
};

PuiseuxScalar add(const PuiseuxScalar& a, const PuiseuxScalar& b);
PuiseuxScalar negate(const PuiseuxScalar& a);
PuiseuxScalar multiply(const PuiseuxScalar& a, const PuiseuxScalar& b);
PuiseuxScalar invert(const PuiseuxScalar& a);
PuiseuxScalar divide(const PuiseuxScalar& a, const PuiseuxScalar& b);

inline Rational ord(const PuiseuxScalar& x) { return x.ord(); }
inline Rational orc(const PuiseuxScalar& x) { return x.orc(); }

/// Terms of the serialized form: (exponent numerator e, coefficient) meaning
/// coefficient * tau^(e/N).
using SerializedPoly = std::vector<std::pair<std::int64_t, Rational>>;
struct SerializedScalar {
  SerializedPoly numerator;
  SerializedPoly denominator;
};
SerializedScalar serialize(const PuiseuxScalar& x);
PuiseuxScalar deserialize(const SerializedScalar& s, std::int64_t ram);

class LiftMatrix {
 public:
  LiftMatrix() = default;
  LiftMatrix(std::size_t rows, std::size_t cols);
  LiftMatrix(std::size_t rows, std::size_t cols, std::vector<PuiseuxScalar> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PuiseuxScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  PuiseuxScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  /// lcm of the entries' ramifications.
  std::int64_t ramification() const;
  LiftMatrix transpose() const;
  LiftMatrix select_rows(const std::vector<std::size_t>& rows) const;
  LiftMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  void append_row(const std::vector<PuiseuxScalar>& row);
  std::vector<PuiseuxScalar> row(std::size_t i) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<PuiseuxScalar> data_;
};

/// Exact classical rank over Q(s) by fraction-free (Bareiss) elimination on
/// the cleared polynomial matrix.
std::size_t matrix_rank(const LiftMatrix& f);

/// Determinant of a square matrix by field elimination.
PuiseuxScalar determinant(const LiftMatrix& f);

/// Solves x * A = b for a row vector x (A square). nullopt if singular.
std::optional<std::vector<PuiseuxScalar>> solve_left(const LiftMatrix& a,
                                                     const std::vector<PuiseuxScalar>& b);

/// Row vector times matrix.
std::vector<PuiseuxScalar> row_times(const std::vector<PuiseuxScalar>& x, const LiftMatrix& f);

/// Deterministic source of generic nonzero rational constants. The range
/// of integers drawn widens with the retry level.
class GenericConstants {
 public:
  explicit GenericConstants(std::uint64_t seed) : rng_(seed) {}
  void set_level(std::size_t level) { level_ = level; }
  std::size_t level() const { return level_; }
  Rational next();

 private:
  std::mt19937_64 rng_;
  std::size_t level_ = 0;
};

}  // namespace tropk
