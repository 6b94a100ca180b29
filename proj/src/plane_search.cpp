#include "tropk/plane_search.hpp"

#include <algorithm>

#include "tropk/develop.hpp"
#include "tropk/rank.hpp"

namespace tropk {

std::optional<std::vector<Rational>> feasible_point(std::size_t vars,
                                                    const std::vector<LinearConstraint>& cons) {
  // Columns: y+ (vars), y- (vars), one slack per inequality, one artificial per row.
  const std::size_t m = cons.size();
  if (m == 0) return std::vector<Rational>(vars, Rational(0));
  std::size_t slacks = 0;
  for (const auto& c : cons) slacks += !c.equality;
  const std::size_t art0 = 2 * vars + slacks;
  const std::size_t ncols = art0 + m;
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(ncols + 1, Rational(0)));
  std::vector<std::size_t> basis(m);
  std::size_t s = 2 * vars;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = cons[i];
    for (std::size_t k = 0; k < vars && k < c.coeffs.size(); ++k) {
      t[i][k] = c.coeffs[k];
      t[i][vars + k] = -c.coeffs[k];
    }
    if (!c.equality) t[i][s++] = 1;
    t[i][ncols] = c.rhs;
    if (c.rhs < 0)
      for (auto& v : t[i]) v = -v;
    t[i][art0 + i] = 1;
    basis[i] = art0 + i;
  }
  auto is_art = [&](std::size_t j) { return j >= art0; };
  for (;;) {
    // Reduced cost of column j for the objective sum of artificials.
    std::size_t enter = ncols;
    for (std::size_t j = 0; j < art0 && enter == ncols; ++j) {
      Rational r = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (is_art(basis[i])) r -= t[i][j];
      if (r < 0) enter = j;
    }
    if (enter == ncols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][ncols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (is_art(basis[i]) && t[i][ncols] != 0) return std::nullopt;
  std::vector<Rational> y(2 * vars, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < 2 * vars) y[basis[i]] = t[i][ncols];
  std::vector<Rational> x(vars);
  for (std::size_t k = 0; k < vars; ++k) x[k] = y[k] - y[vars + k];
  return x;
}

std::size_t pair_index(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  static const std::size_t table[5][5] = {{0, 0, 1, 2, 3},
                                          {0, 0, 4, 5, 6},
                                          {1, 4, 0, 7, 8},
                                          {2, 5, 7, 0, 9},
                                          {3, 6, 8, 9, 0}};
  return table[a][b];
}

namespace {

constexpr std::size_t kPairs = 10;

struct Term {
  std::vector<std::size_t> vars;
  Rational constant;
};

using Condition = std::vector<Term>;

Rational eval(const Term& t, const std::vector<Rational>& q) {
  Rational v = t.constant;
  for (std::size_t k : t.vars) v += q[k];
  return v;
}

bool satisfied(const Condition& c, const std::vector<Rational>& q) {
  std::vector<Rational> v;
  for (const auto& t : c) v.push_back(eval(t, q));
  std::sort(v.begin(), v.end());
  return v.size() >= 2 && v[0] == v[1];
}

// lhs - rhs as a constraint row: (lhs.vars - rhs.vars) . q (<= or ==) rhs.c - lhs.c
LinearConstraint compare(const Term& lhs, const Term& rhs, bool equality) {
  LinearConstraint c{std::vector<Rational>(kPairs, Rational(0)), rhs.constant - lhs.constant, equality};
  for (std::size_t k : lhs.vars) c.coeffs[k] += 1;
  for (std::size_t k : rhs.vars) c.coeffs[k] -= 1;
  return c;
}

std::optional<std::vector<Rational>> search(const std::vector<Condition>& conds,
                                            std::vector<LinearConstraint>& cons, std::size_t& budget) {
  if (budget == 0) return std::nullopt;
  --budget;
  auto q = feasible_point(kPairs, cons);
  if (!q) return std::nullopt;
  const Condition* bad = nullptr;
  for (const auto& c : conds) {
    if (!satisfied(c, *q)) {
      bad = &c;
      break;
    }
  }
  if (bad == nullptr) return q;
  // Try the pairs whose values are closest at the current point first.
  std::vector<std::pair<Rational, std::pair<std::size_t, std::size_t>>> order;
  for (std::size_t s = 0; s < bad->size(); ++s)
    for (std::size_t t = s + 1; t < bad->size(); ++t) {
      Rational gap = eval((*bad)[s], *q) - eval((*bad)[t], *q);
      order.push_back({abs(gap), {s, t}});
    }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [gap, st] : order) {
    const auto [s, t] = st;
    const std::size_t mark = cons.size();
    cons.push_back(compare((*bad)[s], (*bad)[t], true));
    for (std::size_t o = 0; o < bad->size(); ++o)
      if (o != s && o != t) cons.push_back(compare((*bad)[s], (*bad)[o], false));
    auto r = search(conds, cons, budget);
    cons.resize(mark);
    if (r) return r;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Rational>> find_plane(const TropMatrix& a) {
  if (a.cols() != 5) throw DimensionError("plane search needs 5 columns");
  // Rows in a realizable plane form a matrix of Kapranov rank <= 3.
  if (tropical_rank(a).rank > 3) return std::nullopt;
  std::vector<Condition> conds;
  std::vector<std::vector<Rational>> seen;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::vector<Rational> x(5);
    for (std::size_t j = 0; j < 5; ++j) x[j] = a.at(r, j);
    if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
    seen.push_back(x);
    for (std::size_t m = 0; m < 5; ++m) {
      Condition c;
      for (std::size_t i = 0; i < 5; ++i)
        if (i != m) c.push_back({{pair_index(i, m)}, x[i]});
      conds.push_back(std::move(c));
    }
  }
  for (const auto& f : subsets(5, 4)) {
    const std::size_t i = f[0], j = f[1], k = f[2], l = f[3];
    conds.push_back({{{pair_index(i, j), pair_index(k, l)}, 0},
                     {{pair_index(i, k), pair_index(j, l)}, 0},
                     {{pair_index(i, l), pair_index(j, k)}, 0}});
  }
  std::vector<LinearConstraint> cons;
  LinearConstraint gauge{std::vector<Rational>(kPairs, Rational(0)), 0, true};
  gauge.coeffs[0] = 1;
  cons.push_back(gauge);
  std::size_t budget = 200000;
  return search(conds, cons, budget);
}

LiftMatrix realize_plane(const std::vector<Rational>& q, GenericConstants& gen) {
  auto mono = [&](const Rational& e, const Rational& c) {
    return PuiseuxScalar::monomial(e, c, ramification_for(std::vector<Rational>{e}));
  };
  std::vector<Rational> c(4);
  for (std::size_t k = 0; k < 4; ++k) c[k] = q[pair_index(k, 4)];
  auto u = [&](std::size_t x, std::size_t y) -> Rational { return q[pair_index(x, y)] - c[x] - c[y]; };
  std::vector<PuiseuxScalar> x(4);
  for (std::size_t b = 1; b < 4; ++b) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < b; ++a)
      if (u(a, b) > u(best, b)) best = a;
    x[b] = x[best] + mono(u(best, b), gen.next());
  }
  LiftMatrix basis(3, 5);
  for (std::size_t k = 1; k < 4; ++k) {
    basis(k - 1, 0) = -mono(-c[0], 1);
    basis(k - 1, k) = mono(-c[k], 1);
    basis(k - 1, 4) = -(x[k] - x[0]);
  }
  return basis;
}

KapranovCertificate lift_plane_search(const TropMatrix& a, const LiftOptions& opt) {
  if (a.cols() != 5) throw LiftError(LiftError::Kind::Precondition, "plane search needs 5 columns");
  auto q = find_plane(a);
  if (!q) {
    throw LiftError(LiftError::Kind::PipelineFailure, "no tropical plane contains the rows of " + describe(a));
  }
  GenericConstants gen(opt.seed);
  std::size_t used = 0;
  for (std::size_t attempt = 0; attempt < opt.retries; ++attempt) {
    gen.set_level(attempt / 8);
    LiftMatrix basis = realize_plane(*q, gen);
    RowSpace space(basis, {});
    if (space.dimension() != 3) continue;
    LiftMatrix lift(0, 5);
    bool ok = true;
    for (std::size_t r = 0; r < a.rows() && ok; ++r) {
      std::vector<TropScalar> point(5);
      for (std::size_t j = 0; j < 5; ++j) point[j] = a(r, j);
      if (!space.contains(point)) {
        ok = false;
        break;
      }
      ok = false;
      for (const auto& cols : space.pinning_sets(point)) {
        DevelopPlan plan = pinning_plan(space, point, cols, r);
        auto res = solve_coefficients(space.basis(), point, plan, gen, 16);
        used += res.attempts;
        if (res.lambda) {
          lift.append_row(row_times(*res.lambda, space.basis()));
          ok = true;
          break;
        }
      }
    }
    if (!ok) continue;
    KapranovCertificate cert = verify_lift(lift, a, 3);
    if (!cert.verified) continue;
    cert.seed = opt.seed;
    cert.method = "plane-search";
    cert.retries_used = used + attempt;
    cert.trace.push_back({"plane-search", "tree metric realized after " + std::to_string(attempt + 1) +
                                              " draw(s)"});
    return cert;
  }
  throw LiftError(LiftError::Kind::RetryExhausted, "plane realization retries exhausted for " + describe(a));
}

}  // namespace tropk
