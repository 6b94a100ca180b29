#include "tropk/lift.hpp"

#include <functional>
#include <set>

#include "tropk/rank.hpp"

namespace tropk {

namespace {

std::vector<std::vector<std::size_t>> tight_rows(const TropMatrix& m, const std::vector<Rational>& a) {
  std::vector<std::vector<std::size_t>> tight(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Rational lo = a[0] + m.at(0, j);
    for (std::size_t i = 1; i < m.rows(); ++i) lo = std::min(lo, Rational(a[i] + m.at(i, j)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (a[i] + m.at(i, j) == lo) tight[j].push_back(i);
  }
  return tight;
}

// Depth-first search over one tight pair per column; calls `emit` with each
// feasible offset vector found at a leaf until it returns false.
void search_hyperplanes(const TropMatrix& m, const std::function<bool(std::vector<Rational>)>& emit) {
  const std::size_t rows = m.rows();
  std::vector<DifferenceConstraint> cons;
  std::function<bool(std::size_t)> dfs = [&](std::size_t j) -> bool {
    if (j == m.cols()) {
      auto sol = solve_difference_constraints(rows, cons);
      std::vector<Rational> a(rows);
      for (std::size_t i = 0; i < rows; ++i) a[i] = (*sol)[i] - (*sol)[0];
      return emit(std::move(a));
    }
    for (std::size_t s = 0; s < rows; ++s) {
      for (std::size_t t = s + 1; t < rows; ++t) {
        const std::size_t mark = cons.size();
        // a_s + M_sj == a_t + M_tj
        cons.push_back({t, s, Rational(m.at(t, j) - m.at(s, j))});
        cons.push_back({s, t, Rational(m.at(s, j) - m.at(t, j))});
        // a_s + M_sj <= a_i + M_ij
        for (std::size_t i = 0; i < rows; ++i)
          if (i != s && i != t) cons.push_back({i, s, Rational(m.at(i, j) - m.at(s, j))});
        if (solve_difference_constraints(rows, cons) && !dfs(j + 1)) return false;
        cons.resize(mark);
      }
    }
    return true;
  };
  dfs(0);
}

}  // namespace

bool is_valid_hyperplane(const TropMatrix& m, const std::vector<Rational>& offsets) {
  if (offsets.size() != m.rows()) return false;
  for (const auto& t : tight_rows(m, offsets))
    if (t.size() < 2) return false;
  return true;
}

std::vector<HyperplaneWitness> enumerate_hyperplanes(const TropMatrix& m, std::size_t limit) {
  std::vector<HyperplaneWitness> out;
  if (m.rows() < 2 || limit == 0) return out;
  std::set<std::vector<Rational>> seen;
  search_hyperplanes(m, [&](std::vector<Rational> a) {
    if (seen.insert(a).second) out.push_back({a, tight_rows(m, a)});
    return out.size() < limit;
  });
  return out;
}

std::optional<HyperplaneWitness> find_hyperplane(const TropMatrix& m) {
  auto all = enumerate_hyperplanes(m, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

KapranovCertificate lift_hyperplane_base(const TropMatrix& m, const HyperplaneWitness& w,
                                         const LiftOptions& opt) {
  if (m.rows() < 2) throw LiftError(LiftError::Kind::Precondition, "base case needs at least two rows");
  const std::size_t k = m.rows() - 1;
  if (!is_valid_hyperplane(m, w.coefficients)) {
    throw LiftError(LiftError::Kind::Precondition, "hyperplane witness is not valid for " + describe(m));
  }
  if (m.cols() >= m.rows() && tropical_rank(m).rank > k) {
    throw LiftError(LiftError::Kind::Precondition, "base case needs tropical rank <= k, got k+1");
  }
  std::vector<Rational> exps = w.coefficients;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) exps.push_back(m.at(i, j));
  const std::int64_t ram = ramification_for(exps);
  const auto tight = tight_rows(m, w.coefficients);

  GenericConstants gen(opt.seed);
  for (std::size_t attempt = 0; attempt < opt.retries; ++attempt) {
    gen.set_level(attempt / 8);
    std::vector<PuiseuxScalar> alpha(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      alpha[i] = PuiseuxScalar::monomial(w.coefficients[i], gen.next(), ram);
    LiftMatrix f(m.rows(), m.cols());
    bool ok = true;
    for (std::size_t j = 0; j < m.cols() && ok; ++j) {
      const std::size_t q = tight[j].back();
      PuiseuxScalar acc;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == q) continue;
        f(i, j) = PuiseuxScalar::monomial(m.at(i, j), gen.next(), ram);
        acc += alpha[i] * f(i, j);
      }
      f(q, j) = -acc / alpha[q];
      ok = !f(q, j).is_zero() && f(q, j).ord() == m.at(q, j);
    }
    if (!ok) continue;
    auto cert = verify_lift(f, m, k);
    if (!cert.verified) continue;
    cert.seed = opt.seed;
    cert.method = "hyperplane-base";
    cert.retries_used = attempt;
    cert.trace.push_back({"hyperplane-base", "relation offsets chosen from tight pairs"});
    return cert;
  }
  throw LiftError(LiftError::Kind::RetryExhausted,
                  "hyperplane base case exhausted " + std::to_string(opt.retries) + " retries");
}

}  // namespace tropk
