#include "tropk/assignment.hpp"

#include <algorithm>
#include <numeric>

namespace tropk {

namespace {

void require_square(const TropMatrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(who) + ": matrix is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", expected square");
  }
}

}  // namespace

Rational permutation_value(const TropMatrix& a, const Permutation& p) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += a.at(i, p[i]);
  return s;
}

std::optional<std::pair<Rational, Permutation>> solve_assignment(const TropMatrix& a,
                                                                 const std::vector<bool>& forbidden) {
  require_square(a, "solve_assignment");
  const std::size_t n = a.rows();
  auto blocked = [&](std::size_t i, std::size_t j) {
    return !forbidden.empty() && forbidden[i * n + j];
  };
  // Dual potentials u (rows), v (cols); 1-based with column 0 as sentinel.
  std::vector<Rational> u(n + 1, Rational(0)), v(n + 1, Rational(0));
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(n + 1);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      std::optional<Rational> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (!blocked(i0 - 1, j - 1)) {
          Rational cur = a.at(i0 - 1, j - 1) - u[i0] - v[j];
          if (!minv[j] || cur < *minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        // Strict comparison keeps the lowest column index on ties.
        if (minv[j] && (!delta || *minv[j] < *delta)) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (!delta) return std::nullopt;
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Permutation p(n);
  for (std::size_t j = 1; j <= n; ++j) p[match[j] - 1] = j - 1;
  return std::pair{permutation_value(a, p), p};
}

DetResult trop_det(const TropMatrix& a) {
  require_square(a, "trop_det");
  auto sol = solve_assignment(a);
  DetResult r;
  r.value = sol->first;
  r.witness = sol->second;
  return r;
}

DetResult is_singular(const TropMatrix& a) {
  DetResult r = trop_det(a);
  const std::size_t n = a.rows();
  std::vector<bool> forbidden(n * n, false);
  for (std::size_t i = 0; i < n && !r.singular; ++i) {
    forbidden[i * n + r.witness[i]] = true;
    auto alt = solve_assignment(a, forbidden);
    forbidden[i * n + r.witness[i]] = false;
    if (alt && alt->first == r.value.value()) {
      r.singular = true;
      r.second_witness = alt->second;
    }
  }
  return r;
}

namespace {

template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  if (n > 7) throw DimensionError("permutation enumeration is limited to r <= 7");
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

Rational brute_force_det(const TropMatrix& a) {
  require_square(a, "brute_force_det");
  std::optional<Rational> best;
  for_each_permutation(a.rows(), [&](const Permutation& p) {
    Rational v = permutation_value(a, p);
    if (!best || v < *best) best = v;
  });
  return *best;
}

std::uint64_t count_optimal_permutations(const TropMatrix& a) {
  require_square(a, "count_optimal_permutations");
  std::optional<Rational> best;
  std::uint64_t count = 0;
  for_each_permutation(a.rows(), [&](const Permutation& p) {
    Rational v = permutation_value(a, p);
    if (!best || v < *best) {
      best = v;
      count = 1;
    } else if (v == *best) {
      ++count;
    }
  });
  return count;
}

}  // namespace tropk
