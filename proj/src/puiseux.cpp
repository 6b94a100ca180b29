#include "tropk/puiseux.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tropk {

// ---- Poly -----------------------------------------------------------------

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(std::size_t degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::size_t Poly::low_degree() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return k;
  return 0;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(v));
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return {};
  Poly r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

Poly Poly::shifted_up(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<Rational> v(k, Rational(0));
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(std::move(v));
}

Poly Poly::shifted_down(std::size_t k) const {
  if (k > c_.size()) return {};
  return Poly(std::vector<Rational>(c_.begin() + static_cast<long>(k), c_.end()));
}

Poly Poly::inflate(std::size_t k) const {
  if (is_zero() || k == 1) return *this;
  std::vector<Rational> v((c_.size() - 1) * k + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
  return Poly(std::move(v));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw FieldError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Rational> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Rational> q(rem.size() - db, Rational(0));
  const Rational inv_lead = 1 / b.lead();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    Rational f = rem[k] * inv_lead;
    q[k - db] = f;
    for (std::size_t t = 0; t <= db; ++t) rem[k - db + t] -= f * b.coeffs()[t];
  }
  rem.resize(db);
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? r : r.scaled(1 / r.lead());
  }
  if (a.is_zero()) return a;
  return a.scaled(1 / a.lead());
}

// ---- PuiseuxScalar --------------------------------------------------------

PuiseuxScalar::PuiseuxScalar(long c) : PuiseuxScalar(Rational(c)) {}

PuiseuxScalar::PuiseuxScalar(const Rational& c) {
  if (c != 0) num_ = Poly::constant(c);
}

PuiseuxScalar PuiseuxScalar::from_parts(std::int64_t shift, Poly num, Poly den, std::int64_t ram) {
  if (ram <= 0) throw FieldError("ramification must be positive");
  if (den.is_zero()) throw FieldError("division by zero");
  PuiseuxScalar x;
  x.ram_ = ram;
  if (num.is_zero()) return x;
  std::size_t ln = num.low_degree();
  std::size_t ld = den.low_degree();
  num = num.shifted_down(ln);
  den = den.shifted_down(ld);
  shift += static_cast<std::int64_t>(ln) - static_cast<std::int64_t>(ld);
  if (den.degree() > 0 && num.degree() > 0) {
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
  }
  Rational lead = den.lead();
  if (lead != 1) {
    Rational inv = 1 / lead;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  x.shift_ = shift;
  x.num_ = std::move(num);
  x.den_ = std::move(den);
  return x;
}

PuiseuxScalar PuiseuxScalar::monomial(const Rational& a, const Rational& c, std::int64_t ram) {
  if (c == 0) throw FieldError("monomial coefficient must be nonzero");
  if (ram <= 0) throw FieldError("ramification must be positive");
  Rational scaled = a * ram;
  if (scaled.get_den() != 1) {
    throw FieldError("exponent " + a.get_str() + " is not representable with ramification " +
                     std::to_string(ram));
  }
  return from_parts(to_int64(scaled), Poly::constant(c), Poly::constant(1), ram);
}

Rational PuiseuxScalar::ord() const {
  if (is_zero()) throw FieldError("ord of zero");
  Rational r(shift_, ram_);
  r.canonicalize();
  return r;
}

Rational PuiseuxScalar::orc() const {
  if (is_zero()) throw FieldError("orc of zero");
  return num_.coeff(0) / den_.coeff(0);
}

PuiseuxScalar PuiseuxScalar::with_ramification(std::int64_t ram) const {
  if (ram == ram_) return *this;
  if (ram <= 0 || ram % ram_ != 0) {
    throw FieldError("ramification " + std::to_string(ram) + " is not a multiple of " +
                     std::to_string(ram_));
  }
  const std::int64_t k = ram / ram_;
  PuiseuxScalar x;
  x.ram_ = ram;
  if (is_zero()) return x;
  x.shift_ = shift_ * k;
  x.num_ = num_.inflate(static_cast<std::size_t>(k));
  x.den_ = den_.inflate(static_cast<std::size_t>(k));
  return x;
}

namespace {

std::int64_t common_ram(const PuiseuxScalar& a, const PuiseuxScalar& b) {
  return std::lcm(a.ramification(), b.ramification());
}

}  // namespace

PuiseuxScalar PuiseuxScalar::operator-() const {
  PuiseuxScalar x = *this;
  x.num_ = -x.num_;
  return x;
}

PuiseuxScalar PuiseuxScalar::inverse() const {
  if (is_zero()) throw FieldError("division by zero");
  return from_parts(-shift_, den_, num_, ram_);
}

PuiseuxScalar operator+(const PuiseuxScalar& a0, const PuiseuxScalar& b0) {
  const std::int64_t ram = common_ram(a0, b0);
  if (a0.is_zero()) return b0.with_ramification(ram);
  if (b0.is_zero()) return a0.with_ramification(ram);
  PuiseuxScalar a = a0.with_ramification(ram);
  PuiseuxScalar b = b0.with_ramification(ram);
  const std::int64_t lo = std::min(a.shift_, b.shift_);
  Poly an = a.num_.shifted_up(static_cast<std::size_t>(a.shift_ - lo));
  Poly bn = b.num_.shifted_up(static_cast<std::size_t>(b.shift_ - lo));
  if (a.den_ == b.den_) return PuiseuxScalar::from_parts(lo, an + bn, a.den_, ram);
  return PuiseuxScalar::from_parts(lo, an * b.den_ + bn * a.den_, a.den_ * b.den_, ram);
}

PuiseuxScalar operator-(const PuiseuxScalar& a, const PuiseuxScalar& b) { return a + (-b); }

PuiseuxScalar operator*(const PuiseuxScalar& a0, const PuiseuxScalar& b0) {
  const std::int64_t ram = common_ram(a0, b0);
  if (a0.is_zero() || b0.is_zero()) return PuiseuxScalar().with_ramification(ram);
  PuiseuxScalar a = a0.with_ramification(ram);
  PuiseuxScalar b = b0.with_ramification(ram);
  return PuiseuxScalar::from_parts(a.shift_ + b.shift_, a.num_ * b.num_, a.den_ * b.den_, ram);
}

PuiseuxScalar operator/(const PuiseuxScalar& a, const PuiseuxScalar& b) { return a * b.inverse(); }

bool operator==(const PuiseuxScalar& a0, const PuiseuxScalar& b0) {
  const std::int64_t ram = common_ram(a0, b0);
  PuiseuxScalar a = a0.with_ramification(ram);
  PuiseuxScalar b = b0.with_ramification(ram);
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
}

PuiseuxScalar add(const PuiseuxScalar& a, const PuiseuxScalar& b) { return a + b; }
PuiseuxScalar negate(const PuiseuxScalar& a) { return -a; }
PuiseuxScalar multiply(const PuiseuxScalar& a, const PuiseuxScalar& b) { return a * b; }
PuiseuxScalar invert(const PuiseuxScalar& a) { return a.inverse(); }
PuiseuxScalar divide(const PuiseuxScalar& a, const PuiseuxScalar& b) { return a / b; }

namespace {

std::string poly_string(const Poly& p, std::int64_t shift, std::int64_t ram) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const Rational& c = p.coeffs()[k];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    Rational e(shift + static_cast<std::int64_t>(k), ram);
    os << c.get_str();
    if (e != 0) os << "*t^(" << e.get_str() << ")";
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string PuiseuxScalar::to_string() const {
  if (is_zero()) return "0";
  std::string n = poly_string(num_, shift_, ram_);
  if (den_.degree() == 0) return n;
  return "(" + n + ") / (" + poly_string(den_, 0, ram_) + ")";
}

SerializedScalar serialize(const PuiseuxScalar& x) {
  SerializedScalar out;
  if (x.is_zero()) return out;
  const auto& n = x.numerator().coeffs();
  for (std::size_t k = 0; k < n.size(); ++k)
    if (n[k] != 0) out.numerator.emplace_back(x.shift() + static_cast<std::int64_t>(k), n[k]);
  const auto& d = x.denominator().coeffs();
  for (std::size_t k = 0; k < d.size(); ++k)
    if (d[k] != 0) out.denominator.emplace_back(static_cast<std::int64_t>(k), d[k]);
  return out;
}

PuiseuxScalar deserialize(const SerializedScalar& s, std::int64_t ram) {
  auto build = [](const SerializedPoly& terms, std::int64_t& low) {
    if (terms.empty()) return Poly{};
    low = terms.front().first;
    std::int64_t high = low;
    for (const auto& [e, c] : terms) {
      low = std::min(low, e);
      high = std::max(high, e);
    }
    std::vector<Rational> v(static_cast<std::size_t>(high - low + 1), Rational(0));
    for (const auto& [e, c] : terms) v[static_cast<std::size_t>(e - low)] += c;
    return Poly(std::move(v));
  };
  std::int64_t nlow = 0;
  std::int64_t dlow = 0;
  Poly num = build(s.numerator, nlow);
  Poly den = s.denominator.empty() ? Poly::constant(1) : build(s.denominator, dlow);
  if (den.is_zero()) throw FieldError("serialized denominator is zero");
  return PuiseuxScalar::from_parts(nlow - dlow, std::move(num), std::move(den), ram);
}

// ---- LiftMatrix -----------------------------------------------------------

LiftMatrix::LiftMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

LiftMatrix::LiftMatrix(std::size_t rows, std::size_t cols, std::vector<PuiseuxScalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw std::invalid_argument("entry count does not match shape");
}

std::int64_t LiftMatrix::ramification() const {
  std::int64_t r = 1;
  for (const auto& x : data_) r = std::lcm(r, x.ramification());
  return r;
}

LiftMatrix LiftMatrix::transpose() const {
  LiftMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

LiftMatrix LiftMatrix::submatrix(const std::vector<std::size_t>& rows,
                                 const std::vector<std::size_t>& cols) const {
  LiftMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

LiftMatrix LiftMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  std::vector<std::size_t> cols(cols_);
  std::iota(cols.begin(), cols.end(), 0);
  return submatrix(rows, cols);
}

void LiftMatrix::append_row(const std::vector<PuiseuxScalar>& row) {
  if (row.size() != cols_) throw std::invalid_argument("appended row has wrong length");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<PuiseuxScalar> LiftMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)};
}

std::size_t matrix_rank(const LiftMatrix& f) {
  const std::size_t m = f.rows();
  const std::size_t n = f.cols();
  if (m == 0 || n == 0) return 0;
  const std::int64_t ram = f.ramification();
  // Clear denominators and negative powers row by row.
  std::vector<std::vector<Poly>> a(m, std::vector<Poly>(n));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<PuiseuxScalar> row(n);
    std::int64_t lo = 0;
    bool any = false;
    Poly den_lcm = Poly::constant(1);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = f(i, j).with_ramification(ram);
      if (row[j].is_zero()) continue;
      lo = any ? std::min(lo, row[j].shift()) : row[j].shift();
      any = true;
      const Poly& d = row[j].denominator();
      Poly g = gcd(den_lcm, d);
      den_lcm = divmod(den_lcm * d, g).first;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j].is_zero()) continue;
      Poly cof = divmod(den_lcm, row[j].denominator()).first;
      a[i][j] = (row[j].numerator() * cof).shifted_up(static_cast<std::size_t>(row[j].shift() - lo));
    }
  }
  // Bareiss elimination with full pivoting.
  Poly prev = Poly::constant(1);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    std::size_t pr = m, pc = n;
    for (std::size_t i = k; i < m && pr == m; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (!a[i][j].is_zero()) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == m) break;
    std::swap(a[k], a[pr]);
    for (auto& row : a) std::swap(row[k], row[pc]);
    ++rank;
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto [q, r] = divmod(num, prev);
        if (!r.is_zero()) throw FieldError("inexact Bareiss division");
        a[i][j] = std::move(q);
      }
      a[i][k] = Poly{};
    }
    prev = a[k][k];
  }
  return rank;
}

PuiseuxScalar determinant(const LiftMatrix& f0) {
  if (f0.rows() != f0.cols()) throw std::invalid_argument("determinant of non-square matrix");
  LiftMatrix f = f0;
  const std::size_t n = f.rows();
  PuiseuxScalar det(1L);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && f(p, k).is_zero()) ++p;
    if (p == n) return PuiseuxScalar();
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f(k, j), f(p, j));
      det = -det;
    }
    det *= f(k, k);
    PuiseuxScalar inv = f(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (f(i, k).is_zero()) continue;
      PuiseuxScalar factor = f(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) f(i, j) -= factor * f(k, j);
    }
  }
  return det;
}

std::optional<std::vector<PuiseuxScalar>> solve_left(const LiftMatrix& a,
                                                     const std::vector<PuiseuxScalar>& b) {
  // x * A = b  <=>  A^T x^T = b^T
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve_left: shape mismatch");
  LiftMatrix t = a.transpose();
  std::vector<PuiseuxScalar> rhs = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && t(p, k).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(t(k, j), t(p, j));
      std::swap(rhs[k], rhs[p]);
    }
    PuiseuxScalar inv = t(k, k).inverse();
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || t(i, k).is_zero()) continue;
      PuiseuxScalar factor = t(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) t(i, j) -= factor * t(k, j);
      rhs[i] -= factor * rhs[k];
    }
  }
  for (std::size_t k = 0; k < n; ++k) rhs[k] = rhs[k] / t(k, k);
  return rhs;
}

std::vector<PuiseuxScalar> row_times(const std::vector<PuiseuxScalar>& x, const LiftMatrix& f) {
  if (x.size() != f.rows()) throw std::invalid_argument("row_times: shape mismatch");
  std::vector<PuiseuxScalar> out(f.cols());
  for (std::size_t j = 0; j < f.cols(); ++j)
    for (std::size_t i = 0; i < f.rows(); ++i)
      if (!x[i].is_zero()) out[j] += x[i] * f(i, j);
  return out;
}

Rational GenericConstants::next() {
  const long bound = 3 + 4 * static_cast<long>(level_);
  std::uniform_int_distribution<long> dist(-bound, bound - 1);
  long v = dist(rng_);
  if (v >= 0) ++v;  // skip zero
  return Rational(v);
}

}  // namespace tropk
