#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropk/lift.hpp"

namespace tropk {

/// A leading-coefficient condition attached to a plan.
struct LeadingConstraint {
  enum class Kind {
    /// sum over `rows` of orc(lambda_k) * orc(F_k,column) != 0: the combined
    /// entry keeps the minimal order.
    NonVanishing,
    /// The combined entry in `column` is forced to c * tau^target exactly by
    /// solving for the pivot coefficients.
    Pinned,
  };
  Kind kind;
  std::size_t column;
  std::vector<std::size_t> rows;  // positions within DevelopPlan::base
};

/// How to express one line of a matrix as a combination of already lifted
/// lines.
struct DevelopPlan {
  std::size_t target = 0;
  std::vector<std::size_t> base;
  /// Prescribed ord(lambda_k), one per base line.
  std::vector<Rational> orders;
  /// Columns hit exactly; empty means "the columns that need cancellation".
  std::vector<std::size_t> pinned;
  /// Positions within `base` solved for; empty means "search".
  std::vector<std::size_t> pivots;
  std::vector<LeadingConstraint> constraints;
  std::string origin;

  std::string describe() const;
};

struct SolveResult {
  std::optional<std::vector<PuiseuxScalar>> lambda;
  bool infeasible = false;
  std::string message;
  std::size_t attempts = 0;
};

/// Finds lambda with ord(lambda_k) = plan.orders[k] such that every entry of
/// lambda * base_lift has ord equal to `target`. Pinned entries are hit
/// exactly by solving for the pivot coefficients, the multi-pivot form of
/// lambda_p = (-sum_{k != p} lambda_k F_kj + tau^t_j) / F_pj. Retries redraw
/// the generic constants up to `budget` times.
SolveResult solve_coefficients(const LiftMatrix& base_lift, const std::vector<TropScalar>& target,
                               const DevelopPlan& plan, GenericConstants& gen, std::size_t budget);

/// Row space of a lift, with the valuations of its maximal minors.
class RowSpace {
 public:
  /// Picks independent rows of `f`. `rows` maps positions of f to the
  /// caller's line indices.
  RowSpace(const LiftMatrix& f, std::vector<std::size_t> rows);

  std::size_t dimension() const { return basis_rows_.size(); }
  const std::vector<std::size_t>& basis_rows() const { return basis_rows_; }
  const LiftMatrix& basis() const { return basis_; }
  /// ord of the maximal minor on the column set, nullopt if that minor is 0.
  const std::optional<Rational>& minor_order(const std::vector<std::size_t>& cols) const;

  /// Exact test that `point` lies in the tropicalization of the row space,
  /// via the circuit conditions of every (d+1)-column set.
  bool contains(const std::vector<TropScalar>& point) const;

  /// Column sets J with nonzero minor, sorted by ord(minor_J) - sum_J point.
  std::vector<std::vector<std::size_t>> pinning_sets(const std::vector<TropScalar>& point) const;

 private:
  LiftMatrix basis_;
  std::vector<std::size_t> basis_rows_;
  std::map<std::vector<std::size_t>, std::optional<Rational>> minors_;
};

/// Matrix-level input to the plan generator.
struct DevelopState {
  /// Lines already lifted, in the order of `lift`'s rows.
  std::vector<std::size_t> lifted;
  const LiftMatrix* lift = nullptr;
  std::size_t target = 0;
  /// True when the matrix handed to the generator is a transpose, so the
  /// plans develop columns of the original.
  bool columns = false;
  /// Upper limit on auto-search plans.
  std::size_t max_auto = 4;
};

/// Candidate plans in priority order: zero line, four-zero line, the 3322
/// pattern table, then automatic pinning-set plans. `a` must be normalized
/// (nonnegative, every lifted line with its zeros in place).
std::vector<DevelopPlan> plan_generator(const TropMatrix& a, const DevelopState& state);

/// The automatic plan for one pinning set: base = the row-space basis, all
/// base lines pivots, orders by tropical Cramer's rule.
DevelopPlan pinning_plan(const RowSpace& space, const std::vector<TropScalar>& point,
                         const std::vector<std::size_t>& pinned, std::size_t target);

/// Plans from the 3322 pattern for the 4x5 submatrix on `rows` (given in the
/// caller's row indices) of normalized `a`, when it matches the staircase
/// layout with one zero row over three columns.
std::vector<DevelopPlan> pattern_3322_plans(const TropMatrix& a, const std::vector<std::size_t>& rows);

}  // namespace tropk
