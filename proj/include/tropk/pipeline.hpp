#pragma once

#include <optional>
#include <string>

#include "tropk/lift.hpp"
#include "tropk/rank.hpp"

namespace tropk {

/// Rank-3 lift of a g x 5 (or 5 x g) matrix of tropical rank 3. Strategies in
/// order: row induction from a hyperplane base, column developing, the
/// explicit block-pattern constructor, plane search.
KapranovCertificate kapranov_rank3_5col(const TropMatrix& a, const LiftOptions& opt = {});

/// Explicit rank-3 lift for matrices that, up to permuting rows and columns,
/// look like
///   v' u' r' 0 0
///   v  u  r  0 0
///   0  0  0  x y   (remaining rows)
/// with all entries >= 0. The lift has rank <= 3 whatever the tropical rank.
/// Throws PatternMismatch when the pattern is absent.
KapranovCertificate lift_casospecchio(const TropMatrix& a, const LiftOptions& opt = {});

struct KapranovBounds {
  enum class Source { Rank1, Full, Pipeline, TheoremCited, Barvinok, Interval };
  std::size_t lower = 0;
  std::size_t upper = 0;
  Source source = Source::Interval;
  std::optional<KapranovCertificate> certificate;
  std::optional<BarvinokWitness> barvinok;
  std::string note;
};

std::string to_string(KapranovBounds::Source s);

/// lower = rk_t; upper from the strongest available construction.
KapranovBounds kapranov_bounds(const TropMatrix& a, const LiftOptions& opt = {});

}  // namespace tropk
