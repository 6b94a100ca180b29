#include "tropk/rank.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tropk/assignment.hpp"

namespace tropk {

std::string describe(const TropMatrix& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? ", " : "") << to_string(a.at(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

bool nonsingular(const TropMatrix& a, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
  return !is_singular(a.submatrix(rows, cols)).singular;
}

// Grows a nonsingular minor one row/column pair at a time.
TropicalRankWitness greedy_growth(const TropMatrix& a) {
  TropicalRankWitness w{1, {0}, {0}};
  bool grew = true;
  while (grew && w.rank < std::min(a.rows(), a.cols())) {
    grew = false;
    for (std::size_t i = 0; i < a.rows() && !grew; ++i) {
      if (std::find(w.rows.begin(), w.rows.end(), i) != w.rows.end()) continue;
      for (std::size_t j = 0; j < a.cols() && !grew; ++j) {
        if (std::find(w.cols.begin(), w.cols.end(), j) != w.cols.end()) continue;
        auto rows = w.rows;
        auto cols = w.cols;
        rows.insert(std::upper_bound(rows.begin(), rows.end(), i), i);
        cols.insert(std::upper_bound(cols.begin(), cols.end(), j), j);
        if (nonsingular(a, rows, cols)) {
          w = {w.rank + 1, rows, cols};
          grew = true;
        }
      }
    }
  }
  return w;
}

}  // namespace

TropicalRankWitness tropical_rank(const TropMatrix& a) {
  TropicalRankWitness lower = greedy_growth(a);
  const std::size_t top = std::min(a.rows(), a.cols());
  for (std::size_t r = top; r > lower.rank; --r) {
    for (const auto& rows : subsets(a.rows(), r)) {
      for (const auto& cols : subsets(a.cols(), r)) {
        if (nonsingular(a, rows, cols)) return {r, rows, cols};
      }
    }
  }
  return lower;
}

std::optional<std::vector<Rational>> solve_difference_constraints(
    std::size_t nodes, const std::vector<DifferenceConstraint>& constraints) {
  std::vector<Rational> dist(nodes, Rational(0));
  for (std::size_t pass = 0; pass <= nodes; ++pass) {
    bool changed = false;
    for (const auto& c : constraints) {
      Rational cand = dist[c.u] + c.w;
      if (cand < dist[c.v]) {
        dist[c.v] = cand;
        changed = true;
      }
    }
    if (!changed) return dist;
  }
  return std::nullopt;
}

namespace {

using Cell = std::pair<std::size_t, std::size_t>;

// Rank-one term a_i + b_j that dominates M and is tight on `group`.
// Node i is a_i, node m + j is -b_j.
std::optional<std::pair<std::vector<TropScalar>, std::vector<TropScalar>>> tight_outer_sum(
    const TropMatrix& m, const std::vector<Cell>& group) {
  const std::size_t rows = m.rows();
  std::vector<DifferenceConstraint> cons;
  cons.reserve(m.rows() * m.cols() + group.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      cons.push_back({i, rows + j, Rational(-m.at(i, j))});
  for (auto [i, j] : group) cons.push_back({rows + j, i, m.at(i, j)});
  auto sol = solve_difference_constraints(m.rows() + m.cols(), cons);
  if (!sol) return std::nullopt;
  std::vector<TropScalar> a(m.rows()), b(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) a[i] = (*sol)[i];
  for (std::size_t j = 0; j < m.cols(); ++j) b[j] = Rational(-(*sol)[rows + j]);
  return std::pair{a, b};
}

}  // namespace

bool verify_barvinok(const TropMatrix& m, const BarvinokWitness& w) {
  if (w.pairs.size() != w.rank || w.pairs.empty()) return false;
  for (const auto& [a, b] : w.pairs)
    if (a.size() != m.rows() || b.size() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      TropScalar acc = trop_mul(w.pairs[0].first[i], w.pairs[0].second[j]);
      for (std::size_t k = 1; k < w.pairs.size(); ++k)
        acc = trop_add(acc, trop_mul(w.pairs[k].first[i], w.pairs[k].second[j]));
      if (acc != m(i, j)) return false;
    }
  }
  return true;
}

std::optional<BarvinokWitness> barvinok_rank(const TropMatrix& m, std::size_t max_r) {
  if (m.rows() > kBarvinokMaxDim || m.cols() > kBarvinokMaxDim) {
    throw DimensionError("barvinok_rank is limited to 6x6 matrices");
  }
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) cells.emplace_back(i, j);
  const std::size_t nc = cells.size();

  std::vector<std::vector<bool>> compatible(nc, std::vector<bool>(nc, true));
  std::vector<std::size_t> degree(nc, 0);
  for (std::size_t p = 0; p < nc; ++p) {
    for (std::size_t q = p + 1; q < nc; ++q) {
      bool ok = tight_outer_sum(m, {cells[p], cells[q]}).has_value();
      compatible[p][q] = compatible[q][p] = ok;
      degree[p] += ok;
      degree[q] += ok;
    }
  }
  // Greedy clique of pairwise incompatible cells: a lower bound, and the
  // leading cells of the branching order.
  std::vector<std::size_t> order(nc);
  for (std::size_t k = 0; k < nc; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return degree[x] < degree[y]; });
  std::vector<std::size_t> clique;
  for (std::size_t c : order) {
    bool ok = std::all_of(clique.begin(), clique.end(), [&](std::size_t d) { return !compatible[c][d]; });
    if (ok) clique.push_back(c);
  }
  std::vector<std::size_t> branch_order = clique;
  for (std::size_t c : order)
    if (std::find(clique.begin(), clique.end(), c) == clique.end()) branch_order.push_back(c);

  const std::size_t lower = std::max(clique.size(), tropical_rank(m).rank);
  for (std::size_t r = lower; r <= max_r; ++r) {
    std::vector<std::vector<Cell>> groups;
    std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
      if (k == nc) return true;
      const Cell cell = cells[branch_order[k]];
      // By index: deeper levels may append to `groups` and reallocate it.
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        groups[gi].push_back(cell);
        if (tight_outer_sum(m, groups[gi]) && search(k + 1)) return true;
        groups[gi].pop_back();
      }
      if (groups.size() < r) {
        groups.push_back({cell});
        if (search(k + 1)) return true;
        groups.pop_back();
      }
      return false;
    };
    if (search(0)) {
      BarvinokWitness w;
      w.rank = groups.size();
      for (const auto& g : groups) w.pairs.push_back(*tight_outer_sum(m, g));
      if (!verify_barvinok(m, w)) {
        throw TheoremContradiction("barvinok witness failed re-verification for " + describe(m));
      }
      return w;
    }
  }
  return std::nullopt;
}

ChainReport check_chain(const TropMatrix& a, std::size_t kapranov_lower, std::size_t kapranov_upper,
                        bool upper_constructive) {
  ChainReport rep;
  rep.min_dim = std::min(a.rows(), a.cols());
  rep.tropical = tropical_rank(a).rank;
  rep.kapranov_lower = kapranov_lower;
  rep.kapranov_upper = kapranov_upper;
  auto fail = [&](const std::string& what) {
    throw TheoremContradiction("rank chain violated (" + what + ") for " + describe(a));
  };
  if (a.rows() <= kBarvinokMaxDim && a.cols() <= kBarvinokMaxDim) {
    auto b = barvinok_rank(a, rep.min_dim);
    if (!b) fail("no Barvinok decomposition within min(m,n)");
    rep.barvinok = b->rank;
  } else {
    rep.barvinok = rep.min_dim;
  }
  if (rep.tropical < 1) fail("rk_t < 1");
  if (rep.tropical > kapranov_lower) fail("rk_t > Kapranov lower bound");
  if (kapranov_lower > kapranov_upper) fail("Kapranov lower > upper");
  if (kapranov_upper > rep.barvinok) fail("Kapranov upper > rk_B");
  if (rep.barvinok > rep.min_dim) fail("rk_B > min(m,n)");
  if (upper_constructive && (rep.tropical == 1 || rep.tropical == rep.min_dim) &&
      kapranov_upper != rep.tropical) {
    fail("Kapranov upper bound differs from rk_t in an equality case");
  }
  return rep;
}

}  // namespace tropk
