#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropk/semiring.hpp"

namespace tropk {

TropMatrix random_matrix(std::size_t rows, std::size_t cols, long lo, long hi, std::mt19937_64& rng);

/// Outer sum of two random integer vectors.
TropMatrix random_rank1(std::size_t rows, std::size_t cols, long lo, long hi, std::mt19937_64& rng);

struct SamplerTimeout : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenRequest {
  std::size_t rows = 5;
  std::size_t cols = 5;
  std::size_t rank = 3;
  std::size_t count = 1;
  std::uint64_t seed = 1;
  long max_entry = 6;
  std::size_t max_steps = 20000;
};

/// Matrices with entries in [0, max_entry] and tropical rank exactly
/// `rank`, each re-checked before it is returned. Starts from a uniform
/// sample and moves single entries while the number of nonsingular
/// (rank+1)-minors does not grow. Matrix k depends only on (seed, k).
std::vector<TropMatrix> generate_rank_matrices(const GenRequest& req);

struct CorpusRecord {
  std::string shape;
  std::size_t index = 0;
  std::size_t tropical = 0;
  std::size_t barvinok = 0;  // 0 when not computed
  std::size_t kapranov_lower = 0;
  std::size_t kapranov_upper = 0;
  std::string status;
  double millis = 0;
};

struct CorpusReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CorpusRecord> records;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double seconds = 0;

  std::string to_json() const;
};

/// Raised when a record violates a proven property; carries the offending
/// matrix in the message.
struct CorpusViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Suites: "oracle" (assignment solver vs enumeration), "dis" (rank chain),
/// "mio" (rank-3 lifts of g x 5 matrices). `count` scales the per-shape sample
/// size; 0 keeps the defaults (100 per size, 200 per shape, 100 per g).
CorpusReport run_corpus(const std::string& suite, std::uint64_t seed, std::size_t count = 0);

}  // namespace tropk
