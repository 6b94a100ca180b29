#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tropk/assignment.hpp"

using namespace tropk;

TEST_CASE("trop_det examples") {
  auto one = trop_det({{3}});
  CHECK(one.value == TropScalar(3));
  CHECK_FALSE(is_singular({{3}}).singular);

  auto swap = is_singular({{0, 1}, {1, 0}});
  CHECK(swap.value == TropScalar(0));
  CHECK(swap.witness == Permutation{0, 1});
  CHECK_FALSE(swap.singular);

  auto three = is_singular({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(three.value == TropScalar(0));
  CHECK_FALSE(three.singular);
  CHECK(oracle::scan_permutations({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}).optimal == 1);
}

TEST_CASE("is_singular examples") {
  auto z = is_singular({{0, 0}, {0, 0}});
  CHECK(z.singular);
  REQUIRE(z.second_witness);
  CHECK(*z.second_witness != z.witness);

  CHECK_FALSE(is_singular({{0, 2}, {2, 0}}).singular);

  auto r1 = is_singular({{0, 2}, {1, 3}});
  CHECK(r1.singular);
  CHECK(r1.value == TropScalar(3));
}

TEST_CASE("count_optimal_permutations") {
  CHECK(count_optimal_permutations({{0, 0}, {0, 0}}) == 2);
  CHECK(count_optimal_permutations({{0, 1}, {1, 0}}) == 1);
  CHECK(count_optimal_permutations({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}) == 1);
  CHECK_THROWS_AS(count_optimal_permutations(TropMatrix(8, 8)), DimensionError);
  CHECK_THROWS_AS(trop_det(TropMatrix(2, 3)), DimensionError);
}

TEST_CASE("assignment solver matches permutation enumeration") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(0, 5);
  for (std::size_t r = 1; r <= 6; ++r) {
    for (int k = 0; k < 60; ++k) {
      TropMatrix a(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          Rational v(d(rng), 1 + (k % 3 == 0));
          v.canonicalize();
          a(i, j) = v;
        }
      auto res = is_singular(a);
      auto ref = oracle::scan_permutations(a);
      CHECK(res.value.value() == ref.best);
      CHECK(permutation_value(a, res.witness) == ref.best);
      CHECK(res.singular == (ref.optimal >= 2));
      if (res.second_witness) CHECK(permutation_value(a, *res.second_witness) == ref.best);
    }
  }
}

TEST_CASE("det invariances") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(0, 4);
  for (int k = 0; k < 80; ++k) {
    TropMatrix a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = d(rng);
    auto base = is_singular(a);
    // Permute rows and columns.
    std::vector<std::size_t> p{2, 0, 3, 1}, c{1, 3, 0, 2};
    auto moved = is_singular(a.submatrix(p, c));
    CHECK(moved.value == base.value);
    CHECK(moved.singular == base.singular);
    // Shift one row by a constant.
    TropMatrix s = a;
    for (std::size_t j = 0; j < 4; ++j) s(1, j) = Rational(s.at(1, j) + Rational(7, 2));
    auto shifted = is_singular(s);
    CHECK(shifted.value.value() == base.value.value() + Rational(7, 2));
    CHECK(shifted.singular == base.singular);
  }
}
