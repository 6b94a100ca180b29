#include "tropk/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "tropk/assignment.hpp"
#include "tropk/io.hpp"
#include "tropk/pipeline.hpp"
#include "tropk/rank.hpp"

namespace tropk {

TropMatrix random_matrix(std::size_t rows, std::size_t cols, long lo, long hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(lo, hi);
  TropMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

TropMatrix random_rank1(std::size_t rows, std::size_t cols, long lo, long hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(lo, hi);
  std::vector<TropScalar> a(rows), b(cols);
  for (auto& x : a) x = d(rng);
  for (auto& x : b) x = d(rng);
  return outer_sum(a, b);
}

namespace {

using Grid = std::vector<std::vector<long>>;

// Tropical singularity of a small integer minor by enumerating permutations.
bool singular_minor(const Grid& g, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  std::vector<std::size_t> p(c.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = k;
  long best = 0;
  int hits = 0;
  do {
    long v = 0;
    for (std::size_t k = 0; k < p.size(); ++k) v += g[r[k]][c[p[k]]];
    if (hits == 0 || v < best) {
      best = v;
      hits = 1;
    } else if (v == best) {
      ++hits;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return hits >= 2;
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{seed, index, std::uint64_t{0x7470}};
  return std::mt19937_64(seq);
}

TropMatrix sample_one(const GenRequest& req, std::uint64_t index) {
  auto rng = stream(req.seed, index);
  std::uniform_int_distribution<std::size_t> row(0, req.rows - 1), col(0, req.cols - 1);
  std::uniform_int_distribution<long> val(0, req.max_entry);
  const auto rsets = subsets(req.rows, req.rank + 1);
  const auto csets = subsets(req.cols, req.rank + 1);
  auto contains = [](const std::vector<std::size_t>& s, std::size_t x) {
    return std::find(s.begin(), s.end(), x) != s.end();
  };
  std::size_t steps = 0;
  while (steps < req.max_steps) {
    Grid g(req.rows, std::vector<long>(req.cols));
    for (auto& r : g)
      for (auto& x : r) x = val(rng);
    // bad[a][b]: minor (rsets[a], csets[b]) is nonsingular.
    std::vector<std::vector<char>> bad(rsets.size(), std::vector<char>(csets.size()));
    std::size_t total = 0;
    for (std::size_t a = 0; a < rsets.size(); ++a)
      for (std::size_t b = 0; b < csets.size(); ++b) total += bad[a][b] = !singular_minor(g, rsets[a], csets[b]);
    while (total > 0 && steps < req.max_steps) {
      ++steps;
      const std::size_t i = row(rng), j = col(rng);
      const long old = g[i][j];
      g[i][j] = val(rng);
      std::vector<std::pair<std::size_t, std::size_t>> touched;
      std::size_t next = total;
      for (std::size_t a = 0; a < rsets.size(); ++a) {
        if (!contains(rsets[a], i)) continue;
        for (std::size_t b = 0; b < csets.size(); ++b) {
          if (!contains(csets[b], j)) continue;
          const char nb = !singular_minor(g, rsets[a], csets[b]);
          if (nb != bad[a][b]) {
            touched.emplace_back(a, b);
            next = next + nb - bad[a][b];
          }
        }
      }
      if (next <= total) {
        for (auto [a, b] : touched) bad[a][b] ^= 1;
        total = next;
      } else {
        g[i][j] = old;
      }
    }
    ++steps;
    if (total > 0) break;
    TropMatrix m(req.rows, req.cols);
    for (std::size_t i = 0; i < req.rows; ++i)
      for (std::size_t j = 0; j < req.cols; ++j) m(i, j) = g[i][j];
    if (tropical_rank(m).rank == req.rank) return m;
  }
  throw SamplerTimeout("no " + std::to_string(req.rows) + "x" + std::to_string(req.cols) + " matrix of tropical rank " +
                       std::to_string(req.rank) + " found within " + std::to_string(req.max_steps) + " steps");
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t k; (k = next++) < n;) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(m);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::string shape_of(const TropMatrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

[[noreturn]] void violation(const std::string& what, const TropMatrix& m) {
  throw CorpusViolation(what + "\n" + serialize_matrix_document({m, std::nullopt, std::nullopt}));
}

}  // namespace

std::vector<TropMatrix> generate_rank_matrices(const GenRequest& req) {
  if (req.rank == 0 || req.rank > std::min(req.rows, req.cols)) {
    throw SamplerTimeout("tropical rank " + std::to_string(req.rank) + " is impossible for shape " +
                         std::to_string(req.rows) + "x" + std::to_string(req.cols));
  }
  std::vector<TropMatrix> out(req.count);
  parallel_for(req.count, [&](std::size_t k) { out[k] = sample_one(req, k); });
  return out;
}

std::string CorpusReport::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    recs.push_back({{"shape", r.shape},
                    {"index", r.index},
                    {"tropical_rank", r.tropical},
                    {"barvinok_rank", r.barvinok},
                    {"kapranov_lower", r.kapranov_lower},
                    {"kapranov_upper", r.kapranov_upper},
                    {"status", r.status},
                    {"millis", r.millis}});
  }
  nlohmann::json j = {{"suite", suite}, {"seed", seed},       {"passed", passed},
                      {"failed", failed}, {"seconds", seconds}, {"records", recs}};
  return j.dump(1) + "\n";
}

CorpusReport run_corpus(const std::string& suite, std::uint64_t seed, std::size_t count) {
  CorpusReport rep;
  rep.suite = suite;
  rep.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  std::vector<TropMatrix> inputs;
  if (suite == "oracle") {
    const std::size_t per = count ? count : 100;
    for (std::size_t r = 2; r <= 6; ++r)
      for (std::size_t k = 0; k < per; ++k) {
        auto rng = stream(seed, r * 100000 + k);
        inputs.push_back(random_matrix(r, r, 0, 9, rng));
      }
  } else if (suite == "dis") {
    const std::size_t per = count ? count : 200;
    const std::pair<std::size_t, std::size_t> shapes[] = {{3, 3}, {4, 4}, {4, 5}, {5, 5}};
    for (const auto& [m, n] : shapes)
      for (std::size_t k = 0; k < per; ++k) {
        auto rng = stream(seed, m * 1000000 + n * 100000 + k);
        inputs.push_back(random_matrix(m, n, 0, 4, rng));
      }
  } else if (suite == "mio") {
    const std::size_t per = count ? count : 100;
    for (std::size_t g = 4; g <= 8; ++g) {
      GenRequest req;
      req.rows = g;
      req.cols = 5;
      req.count = per;
      req.seed = seed * 1000 + g;
      auto batch = generate_rank_matrices(req);
      inputs.insert(inputs.end(), batch.begin(), batch.end());
    }
  } else {
    throw std::invalid_argument("unknown suite '" + suite + "' (expected dis, mio or oracle)");
  }

  rep.records.resize(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t k) {
    const TropMatrix& m = inputs[k];
    CorpusRecord& rec = rep.records[k];
    rec.shape = shape_of(m);
    rec.index = k;
    const auto t0 = std::chrono::steady_clock::now();
    if (suite == "oracle") {
      auto det = is_singular(m);
      const bool agree =
          det.value == brute_force_det(m) && det.singular == (count_optimal_permutations(m) >= 2);
      if (!agree) violation("assignment solver disagrees with enumeration", m);
      rec.tropical = tropical_rank(m).rank;
      rec.status = "agree";
    } else if (suite == "dis") {
      auto b = kapranov_bounds(m, {seed + k, 1000});
      ChainReport chain;
      try {
        chain = check_chain(m, b.lower, b.upper, b.certificate.has_value());
      } catch (const TheoremContradiction& e) {
        violation(e.what(), m);
      }
      rec.tropical = chain.tropical;
      rec.barvinok = chain.barvinok;
      rec.kapranov_lower = b.lower;
      rec.kapranov_upper = b.upper;
      rec.status = to_string(b.source);
    } else {
      KapranovCertificate cert;
      try {
        cert = kapranov_rank3_5col(m, {seed + k, 1000});
      } catch (const LiftError& e) {
        violation(std::string("rank-3 pipeline failed: ") + e.what(), m);
      }
      if (!cert.verified || cert.rank_bound != 3) violation("unverified rank-3 certificate", m);
      rec.tropical = 3;
      rec.kapranov_lower = 3;
      rec.kapranov_upper = 3;
      rec.status = "verified/" + cert.method;
    }
    rec.millis = elapsed_ms(t0);
  });
  rep.passed = rep.records.size();
  rep.seconds = elapsed_ms(start) / 1000.0;
  return rep;
}

}  // namespace tropk
