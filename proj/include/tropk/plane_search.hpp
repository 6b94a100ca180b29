#pragma once

#include <optional>
#include <vector>

#include "tropk/lift.hpp"

namespace tropk {

/// sum_k coeffs[k] * x_k (<= or ==) rhs, with free variables x.
struct LinearConstraint {
  std::vector<Rational> coeffs;
  Rational rhs;
  bool equality = false;
};

/// Exact feasibility by a two-phase-free simplex (phase one only, Bland's
/// rule). Returns a feasible point or nullopt.
std::optional<std::vector<Rational>> feasible_point(std::size_t vars,
                                                    const std::vector<LinearConstraint>& cons);

/// Index of the pair a < b among the 10 pairs of {0..4}.
std::size_t pair_index(std::size_t a, std::size_t b);

/// Valuations q_ab of the 2x2 minors of a 2x5 matrix W such that every row of
/// `a` lies in the tropicalization of ker W: for each m, min_{i != m}
/// (q_im + x_i) is attained twice. nullopt when no such finite q exists.
std::optional<std::vector<Rational>> find_plane(const TropMatrix& a);

/// A 3x5 basis of ker W for a W realizing q.
LiftMatrix realize_plane(const std::vector<Rational>& q, GenericConstants& gen);

/// Rank-3 lift of a g x 5 matrix by lifting each row into a realized plane.
KapranovCertificate lift_plane_search(const TropMatrix& a, const LiftOptions& opt = {});

}  // namespace tropk
