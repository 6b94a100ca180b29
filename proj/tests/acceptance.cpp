// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tropk/assignment.hpp"
#include "tropk/corpus.hpp"
#include "tropk/io.hpp"
#include "tropk/pipeline.hpp"

using namespace tropk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<KapranovCertificate> emitted;

Outcome fail(const std::string& why) { return {false, why}; }

Outcome determinant_oracle() {
  std::mt19937_64 rng(2024);
  std::size_t n = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t r = 2; r <= 6; ++r) {
    for (int k = 0; k < 500; ++k, ++n) {
      TropMatrix a = random_matrix(r, r, 0, 9, rng);
      const auto ref = oracle::scan_permutations(a);
      const auto det = trop_det(a);
      const auto sing = is_singular(a);
      if (det.value.value() != ref.best || sing.value.value() != ref.best) return fail("value differs on " + describe(a));
      if (sing.singular != (count_optimal_permutations(a) >= 2) || sing.singular != (ref.optimal >= 2)) {
        return fail("singularity differs on " + describe(a));
      }
    }
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s >= 30) return fail("took " + std::to_string(s) + " s");
  return {true, std::to_string(n) + " matrices, " + std::to_string(s) + " s"};
}

Outcome rank_chain() {
  std::mt19937_64 rng(7);
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{3, 3}, {4, 4}, {4, 5}, {5, 5}};
  std::size_t n = 0, certified = 0;
  for (const auto& [m, c] : shapes) {
    for (int k = 0; k < 200; ++k, ++n) {
      TropMatrix a = random_matrix(m, c, 0, 4, rng);
      const std::size_t rt = tropical_rank(a).rank;
      if (rt != oracle::tropical_rank(a)) return fail("tropical rank differs from enumeration on " + describe(a));
      auto b = barvinok_rank(a, std::min(m, c));
      if (!b || !verify_barvinok(a, *b)) return fail("no Barvinok decomposition up to min(m,n) for " + describe(a));
      if (!(1 <= rt && rt <= b->rank && b->rank <= std::min(m, c))) return fail("chain broken on " + describe(a));
      auto kb = kapranov_bounds(a);
      if (kb.lower != rt || kb.upper < kb.lower || kb.upper > b->rank) return fail("bounds out of chain on " + describe(a));
      if (rt == 1 || rt == std::min(m, c)) {
        if (!kb.certificate || !kb.certificate->verified || kb.upper != rt) {
          return fail("missing certificate at rank " + std::to_string(rt) + " for " + describe(a));
        }
        ++certified;
        if (certified % 20 == 0) emitted.push_back(*kb.certificate);
      }
    }
  }
  return {true, std::to_string(n) + " matrices, " + std::to_string(certified) + " certified at rank 1 or min(m,n)"};
}

Outcome rank3_five_columns() {
  std::size_t n = 0;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream per;
  for (std::size_t g = 4; g <= 8; ++g) {
    GenRequest req;
    req.rows = g;
    req.cols = 5;
    req.count = 100;
    req.seed = 1000 + g;
    const auto mats = generate_rank_matrices(req);
    if (mats.size() != 100) return fail("generator returned " + std::to_string(mats.size()) + " matrices");
    const auto tg = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < mats.size(); ++k, ++n) {
      if (oracle::tropical_rank(mats[k]) != 3) return fail("generated matrix not of rank 3: " + describe(mats[k]));
      KapranovCertificate c;
      try {
        c = kapranov_rank3_5col(mats[k], {k + 1, 1000});
      } catch (const std::exception& e) {
        return fail(std::string(e.what()) + " on " + describe(mats[k]));
      }
      if (!c.verified || c.rank_bound != 3 || !verify_lift(c.lift, mats[k], 3).verified) {
        return fail("unverified certificate for " + describe(mats[k]));
      }
      if (k % 10 == 0) emitted.push_back(c);
    }
    per << " g=" << g << ":" << std::chrono::duration<double>(std::chrono::steady_clock::now() - tg).count() << "s";
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s >= 300) return fail("took " + std::to_string(s) + " s");
  return {true, std::to_string(n) + " matrices verified at r = 3," + per.str()};
}

Outcome hyperplane_base() {
  GenRequest req;
  req.rows = 4;
  req.cols = 5;
  req.count = 100;
  req.seed = 404;
  std::size_t n = 0;
  for (const auto& a : generate_rank_matrices(req)) {
    auto w = find_hyperplane(a);
    if (!w) return fail("no hyperplane for " + describe(a));
    auto c = lift_hyperplane_base(a, *w);
    if (!c.verified || c.rank_bound != 3) return fail("base case unverified for " + describe(a));
    if (n++ % 10 == 0) emitted.push_back(c);
  }
  return {true, std::to_string(n) + " base cases verified at r = 3"};
}

Outcome rank_one() {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::size_t n = 0;
  for (; n < 100; ++n) {
    TropMatrix a = random_rank1(dim(rng), dim(rng), -9, 9, rng);
    if (tropical_rank(a).rank != 1) return fail("tropical rank not 1 for " + describe(a));
    auto c = lift_rank1(a);
    if (!c.verified || c.rank_bound != 1) return fail("rank-1 lift unverified for " + describe(a));
    if (n % 10 == 0) emitted.push_back(c);
  }
  return {true, std::to_string(n) + " outer sums lifted at r = 1"};
}

Outcome barvinok_oracle() {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pick(0, 19682);  // 3^9 matrices
  std::set<int> chosen;
  while (chosen.size() < 200) chosen.insert(pick(rng));
  for (int code : chosen) {
    TropMatrix a(3, 3);
    for (std::size_t c = 0, x = static_cast<std::size_t>(code); c < 9; ++c, x /= 3) a(c / 3, c % 3) = TropScalar(long(x % 3));
    auto b = barvinok_rank(a, 3);
    if (!b || b->rank != oracle::barvinok_rank(a)) return fail("rank differs from exhaustive search on " + describe(a));
    if (!verify_barvinok(a, *b)) return fail("witness does not reproduce " + describe(a));
    if (tropical_rank(a).rank > b->rank) return fail("rk_t > rk_B on " + describe(a));
  }
  return {true, "200 distinct 3x3 matrices over {0,1,2}"};
}

PuiseuxScalar random_element(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> e(-8, 8), c(-4, 4), terms(1, 3);
  std::uniform_int_distribution<std::int64_t> ram(1, 3);
  auto poly = [&] {
    const std::int64_t n = ram(rng);
    PuiseuxScalar s;
    while (s.is_zero()) {
      for (long k = terms(rng); k > 0; --k) {
        const long coeff = c(rng);
        if (coeff != 0) s += PuiseuxScalar::monomial(Rational(e(rng), n), coeff, n);
      }
    }
    return s;
  };
  return rng() % 4 == 0 ? poly() / poly() : poly();
}

Outcome puiseux_properties() {
  std::mt19937_64 rng(17);
  std::size_t n = 0, strict = 0;
  for (; n < 1000; ++n) {
    const auto x = random_element(rng), y = random_element(rng), z = random_element(rng);
    const PuiseuxScalar one(1L);
    if (!((x + y) + z == x + (y + z) && x + y == y + x && (x * y) * z == x * (y * z) && x * y == y * x))
      return fail("associativity or commutativity");
    if (!(x * (y + z) == x * y + x * z)) return fail("distributivity");
    if (!((x + PuiseuxScalar()) == x && x * one == x && (x - x).is_zero() && x * x.inverse() == one))
      return fail("identities or inverses");
    if ((x * y).ord() != x.ord() + y.ord()) return fail("ord not additive under products");
    if ((x * y).orc() != x.orc() * y.orc()) return fail("orc not multiplicative");
    const auto s = x + y;
    if (!s.is_zero()) {
      if (s.ord() < std::min(x.ord(), y.ord())) return fail("ord of a sum below the minimum");
      if (x.ord() != y.ord()) {
        ++strict;
        if (s.ord() != std::min(x.ord(), y.ord())) return fail("ord of a sum not the minimum for distinct orders");
      }
    } else if (x.ord() != y.ord()) {
      return fail("sum vanished with distinct orders");
    }
  }
  return {true, std::to_string(n) + " random triples, " + std::to_string(strict) + " with distinct orders"};
}

Outcome certificate_integrity() {
  std::mt19937_64 rng(19);
  std::size_t n = 0, tampered = 0;
  for (const auto& c : emitted) {
    const std::string text = serialize_certificate(c);
    if (!check_certificate(text).verified) return fail("emitted certificate does not re-verify: " + describe(c.matrix));
    const auto doc = nlohmann::json::parse(text);
    const std::size_t rows = c.matrix.rows(), cols = c.matrix.cols();
    std::uniform_int_distribution<std::size_t> ri(0, rows - 1), ci(0, cols - 1);

    auto lift = doc;
    auto& term = lift["lift"][ri(rng)][ci(rng)]["num"][0];
    term[1] = to_string(parse_rational(term[1].get<std::string>()) + 1);
    auto entry = doc;
    auto& e = entry["matrix"]["entries"][ri(rng)][ci(rng)];
    e = to_string(parse_rational(e.get<std::string>()) + Rational(1, 2));
    auto bound = doc;
    bound["rank_bound"] = c.rank_bound - 1;
    for (const auto& t : {lift, entry, bound}) {
      if (check_certificate(t.dump()).verified) return fail("tampering undetected in " + describe(c.matrix));
      ++tampered;
    }
    ++n;
  }
  if (n < 50) return fail("only " + std::to_string(n) + " certificates collected");
  return {true, std::to_string(n) + " certificates re-verified, " + std::to_string(tampered) + " tampered copies rejected"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 determinant matches permutation enumeration", determinant_oracle},
      {"2 rank chain rk_t <= rk_K <= rk_B <= min(m,n)", rank_chain},
      {"3 g x 5 of tropical rank 3 lifts at rank 3", rank3_five_columns},
      {"4 hyperplane base case on 4 x 5", hyperplane_base},
      {"5 rank-1 lifts", rank_one},
      {"6 Barvinok rank matches exhaustive search", barvinok_oracle},
      {"7 Puiseux field properties", puiseux_properties},
      {"8 certificate integrity and tamper detection", certificate_integrity},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.detail << ")" << std::endl;
  }
  return all ? 0 : 1;
}
