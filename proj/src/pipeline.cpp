#include "tropk/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "tropk/develop.hpp"
#include "tropk/plane_search.hpp"

namespace tropk {

namespace {

constexpr std::size_t kRank = 3;
constexpr std::size_t kBaseSubsets = 8;
constexpr std::size_t kWitnesses = 3;
constexpr std::size_t kPlanBudget = 32;

struct Run {
  GenericConstants gen;
  std::size_t budget;
  std::size_t used = 0;
};

std::vector<TropScalar> line(const TropMatrix& a, std::size_t i) {
  std::vector<TropScalar> out(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) out[j] = a(i, j);
  return out;
}

// Appends a lift of every target line of `a`, each a combination of lines
// already in `lift` (whose rows correspond to `lifted`).
bool develop_lines(const TropMatrix& a, LiftMatrix& lift, std::vector<std::size_t>& lifted,
                   const std::vector<std::size_t>& targets, bool columns, Run& run,
                   std::vector<TraceStep>& trace) {
  for (std::size_t t : targets) {
    DevelopState state{lifted, &lift, t, columns};
    bool done = false;
    for (const auto& plan : plan_generator(a, state)) {
      if (run.budget == 0) return false;
      std::vector<std::size_t> pos;
      for (std::size_t b : plan.base)
        pos.push_back(static_cast<std::size_t>(std::find(lifted.begin(), lifted.end(), b) - lifted.begin()));
      LiftMatrix base = lift.select_rows(pos);
      auto res = solve_coefficients(base, line(a, t), plan, run.gen, std::min(run.budget, kPlanBudget));
      run.budget -= std::min(run.budget, res.attempts);
      run.used += res.attempts;
      if (!res.lambda) continue;
      lift.append_row(row_times(*res.lambda, base));
      lifted.push_back(t);
      if (matrix_rank(lift) > kRank) {
        throw LiftError(LiftError::Kind::PipelineFailure, "developed line raised the rank: " + plan.describe());
      }
      trace.push_back({plan.origin, plan.describe()});
      done = true;
      break;
    }
    if (!done) return false;
  }
  return true;
}

LiftMatrix in_order(const LiftMatrix& lift, const std::vector<std::size_t>& lifted) {
  LiftMatrix out(lift.rows(), lift.cols());
  for (std::size_t p = 0; p < lifted.size(); ++p)
    for (std::size_t j = 0; j < lift.cols(); ++j) out(lifted[p], j) = lift(p, j);
  return out;
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
  return out;
}

std::optional<KapranovCertificate> row_induction(const TropMatrix& a, const LiftOptions& opt, Run& run) {
  const std::size_t g = a.rows();
  // Prefer bases that leave out the rows with most zeros after shifting
  // rows then columns to minimum 0, so those rows get the dedicated plans.
  const TropMatrix cn = normalize(normalize(a, Axis::Rows).matrix, Axis::Cols).matrix;
  std::vector<std::size_t> zeros(g, 0);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < 5; ++j) zeros[i] += cn.at(i, j) == 0;
  auto order = subsets(g, 4);
  auto score = [&](const std::vector<std::size_t>& s) {
    std::size_t best = 0;
    for (std::size_t i : complement(g, s)) best = std::max(best, zeros[i]);
    return best;
  };
  std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) { return score(x) > score(y); });
  std::size_t tried = 0;
  for (const auto& s : order) {
    TropMatrix sub = a.select_rows(s);
    if (tropical_rank(sub).rank != kRank) continue;
    if (tried++ == kBaseSubsets) break;
    const auto rest = complement(g, s);
    for (const auto& w : enumerate_hyperplanes(sub, kWitnesses)) {
      LiftOptions bo{opt.seed * 7919 + tried, 64};
      KapranovCertificate base;
      try {
        base = lift_hyperplane_base(sub, w, bo);
      } catch (const LiftError&) {
        continue;
      }
      run.used += base.retries_used;

      // Two shifts of the lines: the whole matrix with rows then columns at
      // minimum 0, and base rows by their offsets with extra rows at minimum 0.
      std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> shifts;
      {
        auto nr = normalize(a, Axis::Rows);
        auto nc = normalize(nr.matrix, Axis::Cols);
        shifts.push_back({nr.offsets, nc.offsets});
      }
      {
        std::vector<Rational> rho(g), gamma(5);
        for (std::size_t k = 0; k < 4; ++k) rho[s[k]] = -w.coefficients[k];
        for (std::size_t j = 0; j < 5; ++j) {
          gamma[j] = sub.at(0, j) + w.coefficients[0];
          for (std::size_t k = 1; k < 4; ++k) gamma[j] = std::min(gamma[j], Rational(sub.at(k, j) + w.coefficients[k]));
        }
        for (std::size_t i : rest) {
          rho[i] = a.at(i, 0) - gamma[0];
          for (std::size_t j = 1; j < 5; ++j) rho[i] = std::min(rho[i], Rational(a.at(i, j) - gamma[j]));
        }
        shifts.push_back({rho, gamma});
      }
      for (const auto& [rho, gamma] : shifts) {
        TropMatrix an(g, 5);
        for (std::size_t i = 0; i < g; ++i)
          for (std::size_t j = 0; j < 5; ++j) an(i, j) = TropScalar(a.at(i, j) - rho[i] - gamma[j]);
        std::vector<Rational> base_shift(4), neg_gamma(5);
        for (std::size_t k = 0; k < 4; ++k) base_shift[k] = -rho[s[k]];
        for (std::size_t j = 0; j < 5; ++j) neg_gamma[j] = -gamma[j];
        LiftMatrix lift = scale_lift(base.lift, base_shift, neg_gamma);

        RowSpace space(lift, s);
        bool inside = true;
        for (std::size_t i : rest) inside = inside && space.contains(line(an, i));
        if (!inside) break;

        std::vector<std::size_t> lifted = s;
        std::vector<TraceStep> trace = base.trace;
        if (!develop_lines(an, lift, lifted, rest, false, run, trace)) continue;
        LiftMatrix f = scale_lift(in_order(lift, lifted), rho, gamma);
        auto cert = verify_lift(f, a, kRank);
        if (!cert.verified) continue;
        cert.method = "row-induction";
        cert.trace = std::move(trace);
        return cert;
      }
    }
    if (run.budget == 0) break;
  }
  return std::nullopt;
}

std::optional<KapranovCertificate> column_develop(const TropMatrix& a, const LiftOptions& opt, Run& run) {
  const TropMatrix at = a.transpose();
  for (std::size_t j = 0; j < 5 && run.budget > 0; ++j) {
    const auto others = complement(5, {j});
    TropMatrix t = at.select_rows(others);
    if (tropical_rank(t).rank > kRank) continue;
    for (const auto& w : enumerate_hyperplanes(t, 2)) {
      KapranovCertificate base;
      try {
        base = lift_hyperplane_base(t, w, {opt.seed * 104729 + j, 64});
      } catch (const LiftError&) {
        continue;
      }
      run.used += base.retries_used;
      LiftMatrix lift = base.lift;
      std::vector<std::size_t> lifted = others;
      std::vector<TraceStep> trace{{"column-develop/hyperplane-base", "column " + std::to_string(j) + " set aside"}};
      if (!develop_lines(at, lift, lifted, {j}, true, run, trace)) continue;
      auto cert = verify_lift(in_order(lift, lifted).transpose(), a, kRank);
      if (!cert.verified) continue;
      cert.method = "column-develop";
      cert.trace = std::move(trace);
      return cert;
    }
  }
  return std::nullopt;
}

TropMatrix shift_to_zero(const TropMatrix& a) {
  TropMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational lo = out.at(i, 0);
    for (std::size_t j = 1; j < a.cols(); ++j) lo = std::min(lo, out.at(i, j));
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = TropScalar(out.at(i, j) - lo);
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational lo = out.at(0, j);
    for (std::size_t i = 1; i < a.rows(); ++i) lo = std::min(lo, out.at(i, j));
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = TropScalar(out.at(i, j) - lo);
  }
  return out;
}

std::optional<KapranovCertificate> block_pattern(const TropMatrix& a, const LiftOptions& opt) {
  for (const TropMatrix& cand : {a, shift_to_zero(a)}) {
    try {
      auto cert = lift_casospecchio(cand, opt);
      if (cand == a) return cert;
      // Same shifts applied to the lift.
      std::vector<Rational> rs(a.rows()), cs(a.cols());
      for (std::size_t i = 0; i < a.rows(); ++i) rs[i] = a.at(i, 0) - cand.at(i, 0);
      for (std::size_t j = 0; j < a.cols(); ++j) cs[j] = a.at(0, j) - cand.at(0, j) - rs[0];
      auto out = verify_lift(scale_lift(cert.lift, rs, cs), a, kRank);
      if (!out.verified) continue;
      out.method = cert.method;
      out.trace = cert.trace;
      out.retries_used = cert.retries_used;
      return out;
    } catch (const LiftError&) {
    }
  }
  return std::nullopt;
}

}  // namespace

KapranovCertificate kapranov_rank3_5col(const TropMatrix& a0, const LiftOptions& opt) {
  const bool flip = a0.cols() != 5 && a0.rows() == 5;
  if (a0.cols() != 5 && !flip) {
    throw LiftError(LiftError::Kind::Precondition, "matrix needs 5 columns or 5 rows");
  }
  const TropMatrix a = flip ? a0.transpose() : a0;
  if (tropical_rank(a).rank != kRank) {
    throw LiftError(LiftError::Kind::Precondition, "tropical rank is not 3");
  }
  auto finish = [&](KapranovCertificate cert) {
    if (flip) {
      cert = [&] {
        auto out = verify_lift(cert.lift.transpose(), a0, kRank);
        out.method = cert.method;
        out.trace = cert.trace;
        out.retries_used = cert.retries_used;
        out.trace.push_back({"transpose", "lifted the transpose"});
        return out;
      }();
    }
    cert.seed = opt.seed;
    if (!cert.verified) throw LiftError(LiftError::Kind::PipelineFailure, "unverified certificate");
    return cert;
  };
  if (a.rows() == kRank) {
    auto cert = lift_full(a, opt);
    return finish(cert);
  }

  Run run{GenericConstants(opt.seed), opt.retries};
  if (auto c = row_induction(a, opt, run)) {
    c->retries_used = run.used;
    return finish(*c);
  }
  if (auto c = column_develop(a, opt, run)) {
    c->retries_used = run.used;
    return finish(*c);
  }
  if (auto c = block_pattern(a, opt)) {
    c->retries_used += run.used;
    return finish(*c);
  }
  auto c = lift_plane_search(a, opt);
  c.retries_used += run.used;
  return finish(c);
}

KapranovCertificate lift_casospecchio(const TropMatrix& a, const LiftOptions& opt) {
  const std::size_t g = a.rows();
  if (a.cols() != 5 || g < 3) throw LiftError(LiftError::Kind::PatternMismatch, "needs g x 5 with g >= 3");
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (a.at(i, j) < 0) throw LiftError(LiftError::Kind::PatternMismatch, "negative entry");

  for (const auto& top : subsets(g, 2)) {
    for (const auto& tail : subsets(5, 2)) {
      const auto head = complement(5, tail);
      const auto rest = complement(g, top);
      bool match = true;
      for (std::size_t i : top)
        for (std::size_t j : tail) match = match && a.at(i, j) == 0;
      for (std::size_t i : rest)
        for (std::size_t j : head) match = match && a.at(i, j) == 0;
      if (!match) continue;
      // Second top row and third head column hold the block minimum.
      std::size_t bi = 0, bj = 0;
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 3; ++y)
          if (a.at(top[x], head[y]) < a.at(top[bi], head[bj])) bi = x, bj = y;
      const std::size_t r1 = top[1 - bi], r2 = top[bi];
      std::vector<std::size_t> c(5);
      std::size_t next = 0;
      for (std::size_t y = 0; y < 3; ++y)
        if (y != bj) c[next++] = head[y];
      c[2] = head[bj];
      c[3] = tail[0];
      c[4] = tail[1];
      const Rational vp = a.at(r1, c[0]), up = a.at(r1, c[1]), rp = a.at(r1, c[2]);
      const Rational v = a.at(r2, c[0]), u = a.at(r2, c[1]), r = a.at(r2, c[2]);
      const Rational mp = std::min(vp, rp);
      const std::int64_t ram = ramification_for(a);
      auto mono = [&](const Rational& e, const Rational& k) { return PuiseuxScalar::monomial(e, k, ram); };

      GenericConstants gen(opt.seed);
      for (std::size_t attempt = 0; attempt < opt.retries; ++attempt) {
        gen.set_level(attempt / 8);
        const Rational h = gen.next();
        PuiseuxScalar x;
        if (vp < rp) {
          x = mono(vp, -3) + mono(rp, 1);
        } else {
          Rational k = gen.next();
          if (k == -3) k = 1;
          x = mono(vp, k);
        }
        std::vector<PuiseuxScalar> f1(g), f4(g), f5(g);
        f1[r1] = x;
        f1[r2] = mono(v, h);
        f4[r1] = PuiseuxScalar(1L);
        f4[r2] = PuiseuxScalar(1L);
        f5[r1] = mono(mp, 3) - PuiseuxScalar(1L);
        f5[r2] = mono(r, 2) - PuiseuxScalar(1L);
        for (std::size_t i : rest) {
          f1[i] = PuiseuxScalar(gen.next());
          f4[i] = mono(a.at(i, c[3]), gen.next());
          f5[i] = mono(a.at(i, c[4]), gen.next());
        }
        const PuiseuxScalar mu1(gen.next());
        const PuiseuxScalar z1 = mono(up, gen.next()) - mu1 * f1[r1];
        const PuiseuxScalar z2 = mono(u, gen.next()) - mu1 * f1[r2];
        const PuiseuxScalar mu3 = (z2 - z1) / (f5[r2] - f5[r1]);
        const PuiseuxScalar mu2 = z1 - mu3 * f5[r1];
        LiftMatrix f(g, 5);
        for (std::size_t i = 0; i < g; ++i) {
          f(i, c[0]) = f1[i];
          f(i, c[1]) = mu1 * f1[i] + mu2 * f4[i] + mu3 * f5[i];
          f(i, c[2]) = f1[i] + f4[i] + f5[i];
          f(i, c[3]) = f4[i];
          f(i, c[4]) = f5[i];
        }
        bool nonzero = true;
        for (std::size_t i = 0; i < g; ++i)
          for (std::size_t j = 0; j < 5; ++j) nonzero = nonzero && !f(i, j).is_zero();
        if (!nonzero) continue;
        auto cert = verify_lift(f, a, kRank);
        if (!cert.verified) continue;
        cert.seed = opt.seed;
        cert.method = "block-pattern";
        cert.retries_used = attempt;
        cert.trace.push_back({"block-pattern", "top rows " + std::to_string(r1) + "," + std::to_string(r2) +
                                                  "; explicit columns " + std::to_string(c[0]) + "," +
                                                  std::to_string(c[3]) + "," + std::to_string(c[4])});
        return cert;
      }
      throw LiftError(LiftError::Kind::RetryExhausted, "block pattern construction exhausted its retries");
    }
  }
  throw LiftError(LiftError::Kind::PatternMismatch, "matrix does not match the block pattern");
}

std::string to_string(KapranovBounds::Source s) {
  switch (s) {
    case KapranovBounds::Source::Rank1: return "rank-1 lift";
    case KapranovBounds::Source::Full: return "full lift";
    case KapranovBounds::Source::Pipeline: return "rank-3 pipeline";
    case KapranovBounds::Source::TheoremCited: return "theorem-cited, no certificate";
    case KapranovBounds::Source::Barvinok: return "barvinok bound";
    case KapranovBounds::Source::Interval: return "interval";
  }
  return "?";
}

KapranovBounds kapranov_bounds(const TropMatrix& a, const LiftOptions& opt) {
  KapranovBounds out;
  const std::size_t mn = std::min(a.rows(), a.cols());
  const std::size_t rt = tropical_rank(a).rank;
  out.lower = rt;
  if (rt == 1) {
    out.certificate = lift_rank1(a);
    out.upper = 1;
    out.source = KapranovBounds::Source::Rank1;
  } else if (rt == mn) {
    out.certificate = lift_full(a, opt);
    out.upper = mn;
    out.source = KapranovBounds::Source::Full;
  } else if (rt == 3 && (a.rows() == 5 || a.cols() == 5)) {
    out.certificate = kapranov_rank3_5col(a, opt);
    out.upper = 3;
    out.source = KapranovBounds::Source::Pipeline;
  } else if (rt == 2) {
    out.upper = 2;
    out.source = KapranovBounds::Source::TheoremCited;
    out.note = "rank 2 forces equal tropical and Kapranov rank; no lift constructed";
  } else if (a.rows() <= kBarvinokMaxDim && a.cols() <= kBarvinokMaxDim) {
    out.barvinok = barvinok_rank(a, mn);
    out.upper = out.barvinok ? out.barvinok->rank : mn;
    out.source = KapranovBounds::Source::Barvinok;
  } else {
    out.certificate = lift_full(a, opt);
    out.upper = mn;
    out.source = KapranovBounds::Source::Interval;
  }
  if (out.certificate && !out.certificate->verified) {
    throw TheoremContradiction("emitted certificate failed verification for " + describe(a));
  }
  return out;
}

}  // namespace tropk
