#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "tropk/assignment.hpp"
#include "tropk/corpus.hpp"
#include "tropk/io.hpp"
#include "tropk/pipeline.hpp"
#include "tropk/rank.hpp"

using namespace tropk;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 2, kGuard = 3, kContradiction = 4 };

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? " " : "") << v[k];
  return os.str();
}

std::string row_string(const std::vector<TropScalar>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << to_string(v[k].value());
  os << "]";
  return os.str();
}

TropMatrix load(const std::string& path, bool allow_decimal) {
  return parse_matrix_document(read_file(path), allow_decimal).matrix;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

std::pair<std::size_t, std::size_t> parse_shape(const std::string& s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) throw ParseError("shape must look like 6x5");
  try {
    return {std::stoul(s.substr(0, x)), std::stoul(s.substr(x + 1))};
  } catch (const std::exception&) {
    throw ParseError("shape must look like 6x5");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tropical rank, Barvinok rank and Kapranov-rank certificates"};
  app.require_subcommand(1);

  std::string file, out, suite = "dis", shape = "5x5", out_dir = ".";
  std::uint64_t seed = 1;
  std::size_t retries = 1000, max_r = kBarvinokMaxDim, count = 0, trank = 3;
  long max_entry = 6;
  bool allow_decimal = false;

  auto* det = app.add_subcommand("det", "tropical determinant and singularity");
  auto* rank = app.add_subcommand("rank", "tropical rank with a nonsingular minor");
  auto* barv = app.add_subcommand("barvinok", "Barvinok rank with a decomposition");
  auto* cert = app.add_subcommand("certify", "Kapranov-rank bounds and a lift certificate");
  auto* ver = app.add_subcommand("verify", "re-verify a certificate file");
  auto* gen = app.add_subcommand("gen", "sample matrices of a given tropical rank");
  auto* corp = app.add_subcommand("corpus", "run a property suite");

  for (auto* c : {det, rank, barv, cert}) {
    c->add_option("file", file, "matrix file")->required();
    c->add_flag("--allow-decimal", allow_decimal, "accept decimal strings, converted exactly");
  }
  barv->add_option("--max-r", max_r, "largest rank searched")->capture_default_str();
  cert->add_option("--seed", seed)->capture_default_str();
  cert->add_option("--retries", retries)->capture_default_str();
  cert->add_option("-o,--out", out, "write the certificate here instead of stdout");
  ver->add_option("file", file, "certificate file")->required();
  gen->add_option("--shape", shape, "rows x cols, e.g. 6x5")->capture_default_str();
  gen->add_option("--tropical-rank", trank)->capture_default_str();
  gen->add_option("--count", count)->default_val(1);
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--max-entry", max_entry)->capture_default_str();
  gen->add_option("--out-dir", out_dir)->capture_default_str();
  corp->add_option("--suite", suite, "dis, mio or oracle")->capture_default_str();
  corp->add_option("--seed", seed)->capture_default_str();
  corp->add_option("--count", count, "per-shape sample size (0 = default)");
  corp->add_option("-o,--out", out, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (det->parsed()) {
      auto r = is_singular(load(file, allow_decimal));
      std::cout << "value: " << to_string(r.value.value()) << "\n";
      std::cout << "permutation: " << join(r.witness) << "\n";
      std::cout << "singular: " << (r.singular ? "yes" : "no") << "\n";
      if (r.second_witness) std::cout << "second permutation: " << join(*r.second_witness) << "\n";
    } else if (rank->parsed()) {
      auto w = tropical_rank(load(file, allow_decimal));
      std::cout << "tropical rank: " << w.rank << "\n";
      std::cout << "minor rows: " << join(w.rows) << "\n";
      std::cout << "minor cols: " << join(w.cols) << "\n";
    } else if (barv->parsed()) {
      auto m = load(file, allow_decimal);
      auto w = barvinok_rank(m, max_r);
      if (!w) {
        std::cout << "barvinok rank: > " << max_r << "\n";
        return kOk;
      }
      std::cout << "barvinok rank: " << w->rank << "\n";
      for (std::size_t k = 0; k < w->pairs.size(); ++k)
        std::cout << "term " << k << ": " << row_string(w->pairs[k].first) << " + "
                  << row_string(w->pairs[k].second) << "\n";
    } else if (cert->parsed()) {
      auto m = load(file, allow_decimal);
      auto b = kapranov_bounds(m, {seed, retries});
      std::cerr << "tropical rank " << b.lower << ", Kapranov rank <= " << b.upper << " (" << to_string(b.source)
                << ")\n";
      if (!b.note.empty()) std::cerr << b.note << "\n";
      if (b.certificate) {
        emit(serialize_certificate(*b.certificate), out);
        if (!b.certificate->verified) return kVerifyFailed;
      }
    } else if (ver->parsed()) {
      auto c = check_certificate(read_file(file));
      std::cout << (c.verified ? "verified" : "failed: " + c.reason) << "\n";
      return c.verified ? kOk : kVerifyFailed;
    } else if (gen->parsed()) {
      const auto [rows, cols] = parse_shape(shape);
      GenRequest req{rows, cols, trank, count, seed, max_entry};
      auto mats = generate_rank_matrices(req);
      std::filesystem::create_directories(out_dir);
      for (std::size_t k = 0; k < mats.size(); ++k) {
        MatrixDocument doc{mats[k], shape + "-rank" + std::to_string(trank) + "-" + std::to_string(k), seed};
        std::ostringstream name;
        name << "m" << rows << "x" << cols << "_r" << trank << "_s" << seed << "_" << k << ".json";
        const auto path = (std::filesystem::path(out_dir) / name.str()).string();
        write_file(path, serialize_matrix_document(doc));
        std::cout << path << "\n";
      }
    } else if (corp->parsed()) {
      auto rep = run_corpus(suite, seed, count);
      if (!out.empty()) write_file(out, rep.to_json());
      std::cout << "suite " << rep.suite << ": " << rep.passed << " passed, " << rep.failed << " failed in "
                << rep.seconds << " s\n";
      return rep.failed == 0 ? kOk : kVerifyFailed;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kGuard;
  } catch (const DimensionError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kGuard;
  } catch (const SamplerTimeout& e) {
    std::cerr << "sampler: " << e.what() << "\n";
    return kGuard;
  } catch (const TheoremContradiction& e) {
    std::cerr << "theorem contradiction: " << e.what() << "\n";
    return kContradiction;
  } catch (const CorpusViolation& e) {
    std::cerr << "property violated: " << e.what() << "\n";
    return kContradiction;
  } catch (const LiftError& e) {
    std::cerr << "lift: " << e.what() << "\n";
    return e.kind == LiftError::Kind::Precondition || e.kind == LiftError::Kind::PatternMismatch ? kGuard
                                                                                                  : kContradiction;
  } catch (const std::invalid_argument& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kGuard;
  }
  return kOk;
}
