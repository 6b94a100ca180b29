#include <doctest.h>

#include <random>

#include "tropk/corpus.hpp"
#include "tropk/develop.hpp"
#include "tropk/lift.hpp"
#include "tropk/rank.hpp"

using namespace tropk;

namespace {

PuiseuxScalar tau(const Rational& a, const Rational& c = 1) {
  return PuiseuxScalar::monomial(a, c, to_int64(Rational(a.get_den())));
}

std::vector<TropScalar> row_of(const TropMatrix& a, std::size_t i) {
  std::vector<TropScalar> r(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) r[j] = a(i, j);
  return r;
}

// 4x5 matrices of tropical rank 3, normalized so every column has two zeros.
std::vector<TropMatrix> twin_zero_bases(std::size_t want, std::uint64_t seed) {
  GenRequest req;
  req.rows = 4;
  req.cols = 5;
  req.count = want * 4;
  req.seed = seed;
  std::vector<TropMatrix> out;
  for (const auto& m : generate_rank_matrices(req)) {
    auto w = find_hyperplane(m);
    REQUIRE(w);
    TropMatrix n = m;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) n(i, j) = TropScalar(m.at(i, j) + w->coefficients[i]);
    n = normalize(n, Axis::Cols).matrix;
    if (out.size() < want) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_CASE("verify_lift examples") {
  CHECK(verify_lift(LiftMatrix(1, 1, {PuiseuxScalar(1L)}), {{0}}, 1).verified);

  std::vector<Rational> a{0, Rational(1, 2), 3}, b{-1, 2};
  LiftMatrix f(3, 2);
  TropMatrix m(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      f(i, j) = tau(a[i]) * tau(b[j]);
      m(i, j) = TropScalar(a[i] + b[j]);
    }
  CHECK(verify_lift(f, m, 1).verified);

  LiftMatrix g(2, 2, {PuiseuxScalar(1L), PuiseuxScalar(1L), PuiseuxScalar(1L), PuiseuxScalar(1L) + tau(1)});
  CHECK(verify_lift(g, {{0, 0}, {0, 0}}, 2).verified);
  CHECK_FALSE(verify_lift(g, {{0, 0}, {0, 0}}, 1).verified);
  CHECK_FALSE(verify_lift(g, {{0, 0}, {0, 1}}, 2).verified);

  LiftMatrix zero(1, 1);
  CHECK_THROWS_AS(verify_lift(zero, {{0}}, 1), LiftError);
  CHECK_THROWS_AS(verify_lift(g, {{0}}, 1), LiftError);
}

TEST_CASE("lift_rank1") {
  auto c = lift_rank1({{0, 2}, {1, 3}});
  CHECK(c.verified);
  CHECK(c.rank_bound == 1);
  // F = [[1, tau^2], [tau, tau^3]] up to the common normalization.
  CHECK(c.lift(0, 0) == PuiseuxScalar(1L));
  CHECK(c.lift(0, 1) == tau(2));
  CHECK(c.lift(1, 0) == tau(1));
  CHECK(c.lift(1, 1) == tau(3));

  auto z = lift_rank1(TropMatrix(3, 4));
  CHECK(z.verified);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(z.lift(i, j) == PuiseuxScalar(1L));

  CHECK_THROWS_AS(lift_rank1({{0, 1}, {1, 0}}), LiftError);
}

TEST_CASE("lift_full") {
  TropMatrix m{{0, Rational(3, 2)}, {Rational(-1, 3), 4}, {2, 2}};
  auto c = lift_full(m);
  CHECK(c.verified);
  CHECK(c.rank_bound == 2);
  auto row = lift_full({{1, 2, 3, 4}});
  CHECK(row.verified);
  CHECK(row.rank_bound == 1);
  auto p = lift_full({{0, 1}, {1, 0}});
  CHECK(p.verified);
  CHECK(p.rank_bound == 2);
}

TEST_CASE("find_hyperplane") {
  TropMatrix twin{{0, 0, 1, 2, 0}, {0, 3, 0, 0, 1}, {2, 0, 0, 1, 0}, {1, 2, 3, 0, 2}};
  auto w = find_hyperplane(twin);
  REQUIRE(w);
  CHECK(w->coefficients == std::vector<Rational>{0, 0, 0, 0});
  CHECK(is_valid_hyperplane(twin, w->coefficients));

  CHECK_FALSE(find_hyperplane({{0, 1}, {1, 0}}));
  CHECK_FALSE(is_valid_hyperplane({{0, 1}, {1, 0}}, {0, 0}));
  CHECK_FALSE(is_valid_hyperplane({{0, 1}, {1, 0}}, {0, 1}));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    TropMatrix r1 = random_rank1(2 + static_cast<std::size_t>(k % 4), 3, -5, 5, rng);
    auto h = find_hyperplane(r1);
    REQUIRE(h);
    CHECK(is_valid_hyperplane(r1, h->coefficients));
    for (std::size_t j = 0; j < r1.cols(); ++j) CHECK(h->tight[j].size() >= 2);
  }
}

TEST_CASE("enumerate_hyperplanes gives distinct valid offsets") {
  TropMatrix m{{0}, {5}, {9}};
  auto all = enumerate_hyperplanes(m, 5);
  CHECK(all.size() == 3);
  CHECK(enumerate_hyperplanes(m, 2).size() == 2);
  TropMatrix zero{{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}};
  CHECK(enumerate_hyperplanes(zero, 5).front().coefficients == std::vector<Rational>(3, Rational(0)));
  for (std::size_t a = 0; a < all.size(); ++a) {
    CHECK(is_valid_hyperplane(m, all[a].coefficients));
    for (std::size_t b = a + 1; b < all.size(); ++b) CHECK(all[a].coefficients != all[b].coefficients);
  }
}

TEST_CASE("lift_hyperplane_base") {
  for (const auto& m : twin_zero_bases(10, 5)) {
    auto w = find_hyperplane(m);
    REQUIRE(w);
    auto c = lift_hyperplane_base(m, *w);
    CHECK(c.verified);
    CHECK(c.rank_bound == 3);
    CHECK(matrix_rank(c.lift) <= 3);
  }
  TropMatrix two{{0, 1, 5}, {2, 3, 7}};
  auto w2 = find_hyperplane(two);
  REQUIRE(w2);
  auto c2 = lift_hyperplane_base(two, *w2);
  CHECK(c2.verified);
  CHECK(c2.rank_bound == 1);

  TropMatrix full{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(lift_hyperplane_base(full, HyperplaneWitness{{0, 0}, {{0, 1}, {0, 1}}}), LiftError);
}

TEST_CASE("scale_lift and ramification_for") {
  CHECK(ramification_for(std::vector<Rational>{Rational(1, 2), Rational(2, 3), 5}) == 6);
  CHECK(ramification_for(TropMatrix{{0, 1}}) == 1);
  LiftMatrix f(1, 2, {PuiseuxScalar(1L), tau(1)});
  auto g = scale_lift(f, {Rational(1, 2)}, {0, -1});
  CHECK(g(0, 0) == tau(Rational(1, 2)));
  CHECK(g(0, 1) == tau(Rational(1, 2)));
}

TEST_CASE("solve_coefficients on a single line") {
  DevelopPlan plan;
  plan.base = {0};
  plan.orders = {5};
  GenericConstants gen(1);
  auto r = solve_coefficients(LiftMatrix(1, 1, {PuiseuxScalar(1L)}), {5}, plan, gen, 10);
  REQUIRE(r.lambda);
  CHECK((*r.lambda)[0] == tau(5));
}

TEST_CASE("solve_coefficients reports infeasible plans") {
  DevelopPlan plan;
  plan.base = {0, 1};
  plan.orders = {0, 0};
  LiftMatrix f(2, 2, {PuiseuxScalar(1L), PuiseuxScalar(1L), PuiseuxScalar(1L), tau(1)});
  GenericConstants gen(1);
  // Target below the reachable order.
  auto low = solve_coefficients(f, {-1, 0}, plan, gen, 10);
  CHECK(low.infeasible);
  CHECK_FALSE(low.lambda);
  // A column that needs cancelling but is not pinned.
  plan.pinned = {0};
  auto unpinned = solve_coefficients(f, {1, 1}, plan, gen, 10);
  CHECK(unpinned.infeasible);
}

TEST_CASE("developing keeps prescribed orders") {
  std::mt19937_64 rng(59);
  for (const auto& m : twin_zero_bases(6, 9)) {
    auto w = find_hyperplane(m);
    auto base = lift_hyperplane_base(m, *w);
    // Combine with random orders and read the target off the combination.
    std::uniform_int_distribution<long> d(0, 3);
    DevelopPlan plan;
    plan.base = {0, 1, 2, 3};
    for (int k = 0; k < 4; ++k) plan.orders.push_back(d(rng));
    std::vector<TropScalar> target(5);
    for (std::size_t j = 0; j < 5; ++j) {
      Rational h = plan.orders[0] + m.at(0, j);
      for (std::size_t k = 1; k < 4; ++k) h = std::min(h, Rational(plan.orders[k] + m.at(k, j)));
      target[j] = h;
    }
    GenericConstants gen(3);
    auto r = solve_coefficients(base.lift, target, plan, gen, 50);
    REQUIRE(r.lambda);
    for (std::size_t k = 0; k < 4; ++k) CHECK((*r.lambda)[k].ord() == plan.orders[k]);
    auto row = row_times(*r.lambda, base.lift);
    for (std::size_t j = 0; j < 5; ++j) CHECK(row[j].ord() == target[j].value());
  }
}

TEST_CASE("RowSpace membership and point lifting") {
  for (const auto& m : twin_zero_bases(6, 13)) {
    auto w = find_hyperplane(m);
    auto base = lift_hyperplane_base(m, *w);
    RowSpace space(base.lift, {0, 1, 2, 3});
    CHECK(space.dimension() == 3);
    for (std::size_t i = 0; i < 4; ++i) {
      auto point = row_of(m, i);
      CHECK(space.contains(point));
      auto sets = space.pinning_sets(point);
      REQUIRE_FALSE(sets.empty());
      auto plan = pinning_plan(space, point, sets.front(), i);
      GenericConstants gen(7);
      auto r = solve_coefficients(space.basis(), point, plan, gen, 50);
      REQUIRE(r.lambda);
      auto lifted = row_times(*r.lambda, space.basis());
      for (std::size_t j = 0; j < 5; ++j) CHECK(lifted[j].ord() == m.at(i, j));
    }
  }
}

TEST_CASE("plan generator priorities") {
  TropMatrix zero_row{{0, 1, 0, 2, 0}, {1, 0, 0, 0, 3}, {0, 0, 2, 0, 0}, {2, 0, 1, 1, 0}, {0, 0, 0, 0, 0}};
  DevelopState st{{0, 1, 2, 3}, nullptr, 4, false};
  auto plans = plan_generator(zero_row, st);
  REQUIRE_FALSE(plans.empty());
  CHECK(plans.front().origin == "zero-row");
  CHECK(plans.front().orders == std::vector<Rational>{0, 0, 0, 0});

  TropMatrix four = zero_row;
  four(4, 2) = 3;
  auto p4 = plan_generator(four, st);
  REQUIRE_FALSE(p4.empty());
  CHECK(p4.front().origin == "four-zero-row");

  // Target = min(row0 + 1, row1 + 2), a point of the lifted row space.
  TropMatrix generic{{0, 3, 1, 2, 0}, {1, 0, 4, 0, 3}, {0, 2, 2, 3, 1}, {2, 0, 1, 1, 2}, {1, 2, 2, 2, 1}};
  auto lift = lift_full(generic.select_rows({0, 1, 2, 3}));
  DevelopState gs{{0, 1, 2, 3}, &lift.lift, 4, false};
  auto gp = plan_generator(generic, gs);
  REQUIRE_FALSE(gp.empty());
  for (const auto& p : gp) CHECK(p.origin == "auto-search");
}

TEST_CASE("staircase pattern uses the case table orders") {
  // a = 0, h = 1, b = 1, t = 2, s = 3, u = 2, y = 4, w = 5: y != u + b - a and t < min{w, y, u + b - a} = 3.
  TropMatrix m{{0, 0, 0, 2, 1}, {1, 0, 2, 0, 1}, {3, 1, 4, 0, 0}, {2, 2, 5, 0, 0}};
  REQUIRE(tropical_rank(m).rank == 3);
  auto plans = pattern_3322_plans(m, {0, 1, 2, 3});
  REQUIRE(plans.size() == 1);
  const auto& plan = plans.front();
  CHECK(plan.target == 3);
  CHECK(plan.base == std::vector<std::size_t>{0, 1, 2});
  CHECK(plan.orders == std::vector<Rational>{3, 1, 0});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto base = lift_full(m.select_rows({0, 1, 2}), {seed, 10});
    GenericConstants gen(seed);
    auto r = solve_coefficients(base.lift, row_of(m, 3), plan, gen, 100);
    REQUIRE(r.lambda);
    CHECK((*r.lambda)[0].ord() == 3);
    CHECK((*r.lambda)[1].ord() == 1);
    CHECK((*r.lambda)[2].ord() == 0);
  }
}

TEST_CASE("four-zero row develops with order-0 coefficients") {
  GenRequest req;
  req.rows = 5;
  req.cols = 5;
  req.count = 400;
  req.seed = 77;
  req.max_entry = 3;
  std::size_t instances = 0;
  for (const auto& a0 : generate_rank_matrices(req)) {
    TropMatrix a = normalize(normalize(a0, Axis::Rows).matrix, Axis::Cols).matrix;
    if (zero_pattern(a).twin_columns.size() != 5) continue;
    std::size_t target = 5;
    bool zero_row = false;
    for (std::size_t i = 0; i < 5; ++i) {
      std::size_t z = 0;
      for (std::size_t j = 0; j < 5; ++j) z += a.at(i, j) == 0;
      if (z == 4) target = i;
      zero_row = zero_row || z == 5;
    }
    if (target == 5 || zero_row) continue;
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < 5; ++i)
      if (i != target) others.push_back(i);
    TropMatrix sub = a.select_rows(others);
    if (zero_pattern(sub).twin_columns.size() != 5) continue;
    // Skip the exceptional shapes: another column shares the zero rows of the target's nonzero column.
    std::size_t c = 0;
    while (a.at(target, c) == 0) ++c;
    auto zeros_in = [&](std::size_t j) {
      std::vector<std::size_t> z;
      for (std::size_t i : others)
        if (a.at(i, j) == 0) z.push_back(i);
      return z;
    };
    bool exceptional = false;
    for (std::size_t j = 0; j < 5; ++j) exceptional = exceptional || (j != c && zeros_in(j) == zeros_in(c));
    if (exceptional) continue;
    ++instances;
    auto base = lift_hyperplane_base(sub, {std::vector<Rational>(4, Rational(0)), {}});
    DevelopState st{others, &base.lift, target, false};
    auto plans = plan_generator(a, st);
    REQUIRE_FALSE(plans.empty());
    REQUIRE(plans.front().origin == "four-zero-row");
    GenericConstants gen(5);
    auto r = solve_coefficients(base.lift, row_of(a, target), plans.front(), gen, 100);
    REQUIRE(r.lambda);
    for (const auto& l : *r.lambda) CHECK(l.ord() == 0);
  }
  CHECK(instances >= 10);
}
