#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropk/semiring.hpp"

namespace tropk {

using Permutation = std::vector<std::size_t>;

struct DetResult {
  TropScalar value;
  Permutation witness;
  bool singular = false;
  std::optional<Permutation> second_witness;
};

/// Minimum-cost perfect matching (Hungarian method, O(r^3)). Cells in
/// `forbidden` (row-major r*r mask, may be empty) are never used; returns
/// nullopt when no permutation avoids them.
std::optional<std::pair<Rational, Permutation>> solve_assignment(
    const TropMatrix& a, const std::vector<bool>& forbidden = {});

/// Tropical determinant with one optimal permutation. Does not test
/// singularity.
DetResult trop_det(const TropMatrix& a);

/// Tropical determinant plus singularity via forbidden-edge re-solves.
DetResult is_singular(const TropMatrix& a);

/// Brute-force count of optimal permutations (r <= 7).
std::uint64_t count_optimal_permutations(const TropMatrix& a);

/// Brute-force minimum over all permutations (r <= 7).
Rational brute_force_det(const TropMatrix& a);

Rational permutation_value(const TropMatrix& a, const Permutation& p);

}  // namespace tropk
