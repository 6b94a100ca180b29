#include "tropk/develop.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "tropk/rank.hpp"

namespace tropk {

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  return os.str();
}

}  // namespace

std::string DevelopPlan::describe() const {
  std::ostringstream os;
  os << "target " << target << " <- base {" << join(base) << "} orders (";
  for (std::size_t k = 0; k < orders.size(); ++k) os << (k ? "," : "") << orders[k].get_str();
  os << ")";
  if (!pinned.empty()) os << " pinned {" << join(pinned) << "}";
  return os.str();
}

// ---- solve_coefficients ---------------------------------------------------

SolveResult solve_coefficients(const LiftMatrix& base_lift, const std::vector<TropScalar>& target,
                               const DevelopPlan& plan, GenericConstants& gen, std::size_t budget) {
  const std::size_t p = base_lift.rows();
  const std::size_t n = base_lift.cols();
  SolveResult res;
  if (plan.orders.size() != p || target.size() != n) {
    res.infeasible = true;
    res.message = "plan shape does not match base lift";
    return res;
  }
  std::vector<Rational> exps = plan.orders;
  for (const auto& t : target) exps.push_back(t.value());
  const std::int64_t ram = std::lcm(base_lift.ramification(), ramification_for(exps));

  // Generic order of every combined entry; columns above it need cancelling.
  std::vector<std::size_t> cancel;
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<Rational> h;
    for (std::size_t k = 0; k < p; ++k) {
      if (base_lift(k, j).is_zero()) continue;
      Rational v = plan.orders[k] + base_lift(k, j).ord();
      if (!h || v < *h) h = v;
    }
    if (!h || target[j].value() < *h) {
      res.infeasible = true;
      res.message = "column " + std::to_string(j) + " target below the generic order";
      return res;
    }
    if (target[j].value() > *h) cancel.push_back(j);
  }
  std::vector<std::size_t> pinned = plan.pinned.empty() ? cancel : plan.pinned;
  // A fully pinned plan determines lambda; the final check decides.
  for (std::size_t j : cancel) {
    if (pinned.size() < p && std::find(pinned.begin(), pinned.end(), j) == pinned.end()) {
      res.infeasible = true;
      res.message = "column " + std::to_string(j) + " needs cancellation but is not pinned";
      return res;
    }
  }
  if (pinned.size() > p) {
    res.infeasible = true;
    res.message = "more pinned columns than base lines";
    return res;
  }
  std::vector<std::vector<std::size_t>> pivot_sets;
  if (!plan.pivots.empty()) {
    pivot_sets.push_back(plan.pivots);
  } else {
    for (auto& s : subsets(p, pinned.size())) {
      if (s.empty() || !determinant(base_lift.submatrix(s, pinned)).is_zero()) pivot_sets.push_back(s);
    }
  }
  if (pivot_sets.empty()) {
    res.infeasible = true;
    res.message = "no invertible pivot block";
    return res;
  }

  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    res.attempts = attempt + 1;
    const auto& pivots = pivot_sets[attempt % pivot_sets.size()];
    gen.set_level(attempt / (4 * pivot_sets.size()));
    std::vector<PuiseuxScalar> lambda(p);
    std::vector<bool> is_pivot(p, false);
    for (std::size_t k : pivots) is_pivot[k] = true;
    for (std::size_t k = 0; k < p; ++k)
      if (!is_pivot[k])
        lambda[k] = PuiseuxScalar::monomial(plan.orders[k], attempt == 0 ? Rational(1) : gen.next(), ram);
    if (!pivots.empty()) {
      std::vector<PuiseuxScalar> rhs(pinned.size());
      for (std::size_t c = 0; c < pinned.size(); ++c) {
        const std::size_t j = pinned[c];
        rhs[c] = PuiseuxScalar::monomial(target[j].value(), attempt == 0 ? Rational(1) : gen.next(), ram);
        for (std::size_t k = 0; k < p; ++k)
          if (!is_pivot[k]) rhs[c] -= lambda[k] * base_lift(k, j);
      }
      auto sol = solve_left(base_lift.submatrix(pivots, pinned), rhs);
      if (!sol) continue;
      for (std::size_t c = 0; c < pivots.size(); ++c) lambda[pivots[c]] = (*sol)[c];
    }
    bool ok = true;
    for (std::size_t k = 0; k < p && ok; ++k)
      ok = !lambda[k].is_zero() && lambda[k].ord() == plan.orders[k];
    if (!ok) continue;
    auto combined = row_times(lambda, base_lift);
    for (std::size_t j = 0; j < n && ok; ++j)
      ok = !combined[j].is_zero() && combined[j].ord() == target[j].value();
    for (const auto& c : plan.constraints) {
      if (!ok || c.kind != LeadingConstraint::Kind::NonVanishing) continue;
      Rational s = 0;
      for (std::size_t k : c.rows) s += lambda[k].orc() * base_lift(k, c.column).orc();
      ok = s != 0;
    }
    if (ok) {
      res.lambda = std::move(lambda);
      return res;
    }
  }
  res.message = "retry budget of " + std::to_string(budget) + " exhausted";
  return res;
}

// ---- RowSpace -------------------------------------------------------------

RowSpace::RowSpace(const LiftMatrix& f, std::vector<std::size_t> rows) : basis_(0, f.cols()) {
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < f.rows(); ++i) {
    chosen.push_back(i);
    if (matrix_rank(f.select_rows(chosen)) < chosen.size()) chosen.pop_back();
  }
  for (std::size_t i : chosen) {
    basis_.append_row(f.row(i));
    basis_rows_.push_back(rows.empty() ? i : rows[i]);
  }
  std::vector<std::size_t> all(dimension());
  std::iota(all.begin(), all.end(), 0);
  for (auto& cols : subsets(f.cols(), dimension())) {
    PuiseuxScalar d = determinant(basis_.submatrix(all, cols));
    minors_[cols] = d.is_zero() ? std::nullopt : std::optional<Rational>(d.ord());
  }
}

const std::optional<Rational>& RowSpace::minor_order(const std::vector<std::size_t>& cols) const {
  return minors_.at(cols);
}

bool RowSpace::contains(const std::vector<TropScalar>& point) const {
  const std::size_t n = basis_.cols();
  const std::size_t d = dimension();
  if (d >= n) return true;
  for (const auto& tau : subsets(n, d + 1)) {
    std::optional<Rational> lo;
    std::size_t hits = 0;
    for (std::size_t drop = 0; drop <= d; ++drop) {
      std::vector<std::size_t> rest;
      for (std::size_t k = 0; k <= d; ++k)
        if (k != drop) rest.push_back(tau[k]);
      const auto& p = minor_order(rest);
      if (!p) continue;
      Rational v = *p + point[tau[drop]].value();
      if (!lo || v < *lo) {
        lo = v;
        hits = 1;
      } else if (v == *lo) {
        ++hits;
      }
    }
    if (lo && hits < 2) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> RowSpace::pinning_sets(const std::vector<TropScalar>& point) const {
  std::vector<std::pair<Rational, std::vector<std::size_t>>> scored;
  for (const auto& [cols, p] : minors_) {
    if (!p) continue;
    Rational w = *p;
    for (std::size_t j : cols) w -= point[j].value();
    scored.emplace_back(w, cols);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::vector<std::size_t>> out;
  for (auto& [w, cols] : scored) out.push_back(cols);
  return out;
}

DevelopPlan pinning_plan(const RowSpace& space, const std::vector<TropScalar>& point,
                         const std::vector<std::size_t>& pinned, std::size_t target) {
  const std::size_t d = space.dimension();
  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  LiftMatrix block = space.basis().submatrix(all, pinned);
  DevelopPlan plan;
  plan.target = target;
  plan.base = space.basis_rows();
  plan.pinned = pinned;
  plan.pivots = all;
  plan.origin = "auto-search";
  // lambda = v_J * block^{-1}; column k of the inverse solves e_k.
  for (std::size_t k = 0; k < d; ++k) {
    std::optional<Rational> best;
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<PuiseuxScalar> unit(d);
      unit[c] = PuiseuxScalar(1L);
      auto row = solve_left(block, unit);  // row c of the inverse
      if (!row || (*row)[k].is_zero()) continue;
      Rational o = point[pinned[c]].value() + (*row)[k].ord();
      if (!best || o < *best) best = o;
    }
    plan.orders.push_back(best.value_or(Rational(0)));
  }
  for (std::size_t j : pinned) plan.constraints.push_back({LeadingConstraint::Kind::Pinned, j, all});
  return plan;
}

// ---- plan generation ------------------------------------------------------

namespace {

// Fills NonVanishing constraints for columns whose target equals the generic
// order, and Pinned for the others.
void annotate(DevelopPlan& plan, const TropMatrix& a) {
  plan.constraints.clear();
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational h = plan.orders[0] + a.at(plan.base[0], j);
    for (std::size_t k = 1; k < plan.base.size(); ++k)
      h = std::min(h, Rational(plan.orders[k] + a.at(plan.base[k], j)));
    std::vector<std::size_t> tight;
    for (std::size_t k = 0; k < plan.base.size(); ++k)
      if (plan.orders[k] + a.at(plan.base[k], j) == h) tight.push_back(k);
    auto kind = a.at(plan.target, j) == h ? LeadingConstraint::Kind::NonVanishing
                                           : LeadingConstraint::Kind::Pinned;
    plan.constraints.push_back({kind, j, tight});
  }
}

DevelopPlan uniform_plan(const TropMatrix& a, const DevelopState& s, std::string origin) {
  DevelopPlan plan;
  plan.target = s.target;
  plan.base = s.lifted;
  plan.orders.assign(s.lifted.size(), Rational(0));
  plan.origin = std::move(origin);
  annotate(plan, a);
  return plan;
}

}  // namespace

std::vector<DevelopPlan> pattern_3322_plans(const TropMatrix& a, const std::vector<std::size_t>& rows) {
  std::vector<DevelopPlan> out;
  if (a.cols() != 5 || rows.size() != 4) return out;
  std::set<std::string> seen;
  std::vector<std::size_t> rp = rows;
  std::sort(rp.begin(), rp.end());
  do {
    const std::size_t r1 = rp[0], r2 = rp[1], r3 = rp[2], r4 = rp[3];
    std::vector<std::size_t> cp{0, 1, 2, 3, 4};
    do {
      const std::size_t c1 = cp[0], c2 = cp[1], c3 = cp[2], c4 = cp[3], c5 = cp[4];
      auto at = [&](std::size_t i, std::size_t j) -> const Rational& { return a.at(i, j); };
      if (at(r1, c1) != 0 || at(r1, c2) != 0 || at(r1, c3) != 0) continue;
      if (at(r2, c4) != 0 || at(r3, c4) != 0 || at(r4, c4) != 0) continue;
      if (at(r3, c5) != 0 || at(r4, c5) != 0 || at(r2, c5) == 0) continue;
      const Rational a_ = at(r2, c2);
      const Rational h = at(r2, c1) - a_;
      const Rational b = at(r3, c2);
      if (h <= 0 || a_ > b || at(r4, c1) != b + h) continue;
      const Rational s = at(r3, c1), t = at(r4, c2), u = at(r2, c3), y = at(r3, c3), w = at(r4, c3);
      if (!(t > b && s > b + h && y > b + h && w > b + h && u > a_ + h)) continue;
      const Rational ub = u + b - a_;
      const Rational mu = std::min({w, y, ub});
      DevelopPlan plan;
      plan.origin = "pattern-3322";
      if (y != ub) {
        plan.target = r4;
        plan.base = {r1, r2, r3};
        plan.orders = {mu, Rational(b - a_), Rational(0)};
      } else if (w <= y) {
        plan.target = r4;
        plan.base = {r1, r2, r3};
        plan.orders = {w, Rational(b - a_), Rational(0)};
      } else if (t < mu) {
        plan.target = r3;
        plan.base = {r2, r4};
        plan.orders = {Rational(b - a_), Rational(0)};
      } else {
        plan.target = r4;
        plan.base = {r2, r3};
        plan.orders = {Rational(b - a_), Rational(0)};
      }
      annotate(plan, a);
      if (seen.insert(plan.describe()).second) out.push_back(std::move(plan));
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return out;
}

std::vector<DevelopPlan> plan_generator(const TropMatrix& a, const DevelopState& s) {
  std::vector<DevelopPlan> plans;
  if (s.lifted.empty()) return plans;
  const std::string line = s.columns ? "column" : "row";
  std::size_t zeros = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) zeros += a.at(s.target, j) == 0;
  if (zeros == a.cols()) plans.push_back(uniform_plan(a, s, "zero-" + line));
  if (a.cols() == 5 && zeros == 4) plans.push_back(uniform_plan(a, s, "four-zero-" + line));

  if (a.cols() == 5 && s.lifted.size() >= 3) {
    for (const auto& pick : subsets(s.lifted.size(), 3)) {
      std::vector<std::size_t> rows{s.lifted[pick[0]], s.lifted[pick[1]], s.lifted[pick[2]], s.target};
      for (auto& plan : pattern_3322_plans(a, rows)) {
        bool usable = plan.target == s.target &&
                      std::all_of(plan.base.begin(), plan.base.end(), [&](std::size_t r) {
                        return std::find(s.lifted.begin(), s.lifted.end(), r) != s.lifted.end();
                      });
        if (usable) plans.push_back(std::move(plan));
      }
    }
  }
  if (s.columns) {
    for (auto& p : plans) p.origin = "column-develop/" + p.origin;
  }

  if (s.lift != nullptr) {
    RowSpace space(*s.lift, s.lifted);
    std::vector<TropScalar> point(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) point[j] = a(s.target, j);
    if (space.contains(point)) {
      std::size_t emitted = 0;
      for (const auto& cols : space.pinning_sets(point)) {
        if (emitted++ == s.max_auto) break;
        auto plan = pinning_plan(space, point, cols, s.target);
        if (s.columns) plan.origin = "column-develop/" + plan.origin;
        plans.push_back(std::move(plan));
      }
    }
  }
  return plans;
}

}  // namespace tropk
