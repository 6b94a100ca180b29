#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropk/semiring.hpp"

namespace tropk {

struct TropicalRankWitness {
  std::size_t rank = 0;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Exact tropical rank. A greedy growth pass supplies a lower bound; every
/// larger minor size is then checked exhaustively.
TropicalRankWitness tropical_rank(const TropMatrix& a);

struct BarvinokWitness {
  std::size_t rank = 0;
  /// (column vector a_k, row vector b_k) with M = min_k (a_k_i + b_k_j).
  std::vector<std::pair<std::vector<TropScalar>, std::vector<TropScalar>>> pairs;
};

inline constexpr std::size_t kBarvinokMaxDim = 6;

/// Smallest r <= max_r with a decomposition into r outer sums, or nullopt
/// when none exists up to max_r. Throws DimensionError above 6x6.
std::optional<BarvinokWitness> barvinok_rank(const TropMatrix& a, std::size_t max_r);

/// Exact entrywise check min_k outer_sum(a_k, b_k) == M.
bool verify_barvinok(const TropMatrix& m, const BarvinokWitness& w);

/// Solves a difference-constraint system x_v - x_u <= w over `nodes`
/// variables by Bellman-Ford; nullopt when infeasible.
struct DifferenceConstraint {
  std::size_t u, v;
  Rational w;
};
std::optional<std::vector<Rational>> solve_difference_constraints(
    std::size_t nodes, const std::vector<DifferenceConstraint>& constraints);

/// Raised when a proven inequality between ranks fails. Never expected.
struct TheoremContradiction : std::logic_error {
  using std::logic_error::logic_error;
};

struct ChainReport {
  std::size_t tropical = 0;
  std::size_t kapranov_lower = 0;
  std::size_t kapranov_upper = 0;
  std::size_t barvinok = 0;
  std::size_t min_dim = 0;
};

/// Checks 1 <= rk_t <= lower <= upper <= rk_B <= min(m, n). When rk_t is 1 or
/// min(m, n) and `upper_constructive` is set, also requires upper == rk_t.
ChainReport check_chain(const TropMatrix& a, std::size_t kapranov_lower, std::size_t kapranov_upper,
                        bool upper_constructive);

std::string describe(const TropMatrix& a);

}  // namespace tropk
