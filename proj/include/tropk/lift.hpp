#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropk/puiseux.hpp"
#include "tropk/semiring.hpp"

namespace tropk {

struct LiftError : std::runtime_error {
  enum class Kind { Precondition, RetryExhausted, PatternMismatch, PlanInfeasible, PipelineFailure };
  LiftError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

/// One induction step (or other construction step) recorded in a certificate.
struct TraceStep {
  std::string origin;  // e.g. "hyperplane-base", "zero-row", "auto-search"
  std::string detail;
};

struct KapranovCertificate {
  TropMatrix matrix;
  std::size_t rank_bound = 0;
  LiftMatrix lift;
  bool verified = false;
  std::uint64_t seed = 0;
  std::string method;
  std::vector<TraceStep> trace;
  /// Generic-constant redraws spent producing the lift.
  std::size_t retries_used = 0;
};

struct LiftOptions {
  std::uint64_t seed = 1;
  std::size_t retries = 1000;
};

/// ord(F) == M entrywise and rank(F) <= r, both exact. Throws LiftError on a
/// zero entry or a shape mismatch.
KapranovCertificate verify_lift(const LiftMatrix& f, const TropMatrix& m, std::size_t r);

/// Lift with entries c_ij * tau^(M_ij) for generic c_ij, r = min(m, n).
KapranovCertificate lift_full(const TropMatrix& m, const LiftOptions& opt = {});

/// Monomial lift tau^(a_i + b_j) of an outer sum; throws Precondition when M is
/// not of tropical rank 1.
KapranovCertificate lift_rank1(const TropMatrix& m);

/// Offsets a with min_i (a_i + M_ij) attained at least twice in every column.
struct HyperplaneWitness {
  std::vector<Rational> coefficients;
  /// For each column, the row indices attaining the minimum.
  std::vector<std::vector<std::size_t>> tight;
};

bool is_valid_hyperplane(const TropMatrix& m, const std::vector<Rational>& offsets);

/// Searches tight-pair patterns column by column, solving the resulting
/// difference constraints exactly. nullopt when no hyperplane exists.
std::optional<HyperplaneWitness> find_hyperplane(const TropMatrix& m);

/// Up to `limit` witnesses with pairwise distinct offsets.
std::vector<HyperplaneWitness> enumerate_hyperplanes(const TropMatrix& m, std::size_t limit);

/// Lift of a (k+1) x n matrix whose columns all satisfy one linear relation
/// sum_i alpha_i F_ij = 0 with ord(alpha_i) = a_i; certificate at r = k.
KapranovCertificate lift_hyperplane_base(const TropMatrix& m, const HyperplaneWitness& w,
                                         const LiftOptions& opt = {});

/// Multiplies row i by tau^(row_shift_i) and column j by tau^(col_shift_j).
LiftMatrix scale_lift(const LiftMatrix& f, const std::vector<Rational>& row_shift,
                      const std::vector<Rational>& col_shift);

/// Smallest ramification making every rational in `values` an integer
/// multiple of 1/N.
std::int64_t ramification_for(const std::vector<Rational>& values);
std::int64_t ramification_for(const TropMatrix& m);

}  // namespace tropk
