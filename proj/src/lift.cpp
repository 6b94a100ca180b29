#include "tropk/lift.hpp"

#include <algorithm>
#include <numeric>

#include "tropk/rank.hpp"

namespace tropk {

std::int64_t ramification_for(const std::vector<Rational>& values) {
  Integer n = 1;
  for (const auto& v : values) n = lcm(n, v.get_den());
  if (!n.fits_slong_p()) throw FieldError("ramification index overflows");
  return n.get_si();
}

std::int64_t ramification_for(const TropMatrix& m) {
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) vals.push_back(m.at(i, j));
  return ramification_for(vals);
}

KapranovCertificate verify_lift(const LiftMatrix& f, const TropMatrix& m, std::size_t r) {
  if (f.rows() != m.rows() || f.cols() != m.cols()) {
    throw LiftError(LiftError::Kind::Precondition, "lift and matrix shapes differ");
  }
  KapranovCertificate cert;
  cert.matrix = m;
  cert.rank_bound = r;
  cert.lift = f;
  bool ords_match = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (f(i, j).is_zero()) {
        throw LiftError(LiftError::Kind::Precondition,
                        "lift entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is zero");
      }
      if (f(i, j).ord() != m.at(i, j)) ords_match = false;
    }
  }
  cert.verified = ords_match && matrix_rank(f) <= r;
  return cert;
}

KapranovCertificate lift_full(const TropMatrix& m, const LiftOptions& opt) {
  const std::int64_t ram = ramification_for(m);
  GenericConstants gen(opt.seed);
  LiftMatrix f(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) f(i, j) = PuiseuxScalar::monomial(m.at(i, j), gen.next(), ram);
  auto cert = verify_lift(f, m, std::min(m.rows(), m.cols()));
  cert.seed = opt.seed;
  cert.method = "full";
  cert.trace.push_back({"full", "generic monomial lift"});
  return cert;
}

KapranovCertificate lift_rank1(const TropMatrix& m) {
  std::vector<TropScalar> a(m.rows()), b(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) a[i] = Rational(m.at(i, 0) - m.at(0, 0));
  for (std::size_t j = 0; j < m.cols(); ++j) b[j] = m(0, j);
  if (outer_sum(a, b) != m) {
    throw LiftError(LiftError::Kind::Precondition, "matrix is not of tropical rank 1: " + describe(m));
  }
  const std::int64_t ram = ramification_for(m);
  LiftMatrix f(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      f(i, j) = PuiseuxScalar::monomial(Rational(a[i].value() + b[j].value()), 1, ram);
  auto cert = verify_lift(f, m, 1);
  cert.method = "rank1";
  cert.trace.push_back({"rank1", "monomial outer product"});
  return cert;
}

LiftMatrix scale_lift(const LiftMatrix& f, const std::vector<Rational>& row_shift,
                      const std::vector<Rational>& col_shift) {
  std::vector<Rational> all = row_shift;
  all.insert(all.end(), col_shift.begin(), col_shift.end());
  const std::int64_t ram = ramification_for(all);
  LiftMatrix out = f;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    for (std::size_t j = 0; j < f.cols(); ++j) {
      Rational e = row_shift[i] + col_shift[j];
      if (e != 0) out(i, j) = f(i, j) * PuiseuxScalar::monomial(e, 1, ram);
    }
  }
  return out;
}

}  // namespace tropk
