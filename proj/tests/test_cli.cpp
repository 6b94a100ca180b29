#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "tropk/io.hpp"

using namespace tropk;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TROPK_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p) != nullptr) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("tropk-cli-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path put(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::path p = dir / name;
  write_file(p.string(), text);
  return p;
}

}  // namespace

TEST_CASE("det") {
  auto dir = scratch();
  auto r = run("det " + put(dir, "z.json", R"({"entries": [[0, 0], [0, 0]]})").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("value: 0") != std::string::npos);
  CHECK(r.out.find("singular: yes") != std::string::npos);

  r = run("det " + put(dir, "id.json", R"({"entries": [[0, 1], [1, 0]]})").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("singular: no") != std::string::npos);

  CHECK(run("det " + put(dir, "rect.json", R"({"entries": [[0, 1, 2]]})").string()).code == 3);
  CHECK(run("det " + (dir / "missing.json").string()).code == 3);
  fs::remove_all(dir);
}

TEST_CASE("decimal entries need the opt-in") {
  auto dir = scratch();
  auto f = put(dir, "d.json", R"({"entries": [["0.5", 0], [0, 0]]})").string();
  CHECK(run("det " + f).code == 3);
  auto r = run("det --allow-decimal " + f);
  CHECK(r.code == 0);
  CHECK(r.out.find("value: 0") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("rank and barvinok") {
  auto dir = scratch();
  auto f = put(dir, "m.json", R"({"entries": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]})").string();
  auto r = run("rank " + f);
  CHECK(r.code == 0);
  CHECK(r.out.find("tropical rank: 3") != std::string::npos);
  r = run("barvinok " + f);
  CHECK(r.code == 0);
  CHECK(r.out.find("barvinok rank: 3") != std::string::npos);
  r = run("barvinok --max-r 2 " + f);
  CHECK(r.code == 0);
  CHECK(r.out.find("barvinok rank: > 2") != std::string::npos);
  auto big = put(dir, "big.json", R"({"entries": [[0,0,0,0,0,0,0],[0,0,0,0,0,0,0]]})").string();
  CHECK(run("barvinok " + big).code == 3);
  fs::remove_all(dir);
}

TEST_CASE("certify then verify, and tampering fails") {
  auto dir = scratch();
  auto f = put(dir, "r1.json", R"({"entries": [[0, 2], [1, 3]]})").string();
  auto cert = (dir / "r1.cert.json").string();
  CHECK(run("certify " + f + " -o " + cert).code == 0);
  auto r = run("verify " + cert);
  CHECK(r.code == 0);
  CHECK(r.out.find("verified") == 0);

  auto j = nlohmann::json::parse(read_file(cert));
  CHECK(j["rank_bound"] == 1);
  j["lift"][0][1]["num"][0][0] = "3";
  auto bad = put(dir, "bad.json", j.dump()).string();
  r = run("verify " + bad);
  CHECK(r.code == 2);
  CHECK(r.out.find("failed") == 0);

  CHECK(run("verify " + f).code == 3);

  auto six = put(dir, "g.json", R"({"entries": [[1,4,5,6,2],[0,3,4,6,1],[1,4,6,6,2],[2,3,3,5,3],[0,4,3,3,1],[5,2,1,1,6]]})");
  auto c6 = (dir / "g.cert.json").string();
  CHECK(run("certify --seed 3 " + six.string() + " -o " + c6).code == 0);
  CHECK(run("verify " + c6).code == 0);
  CHECK(nlohmann::json::parse(read_file(c6))["rank_bound"] == 3);
  fs::remove_all(dir);
}

TEST_CASE("gen writes deterministic files") {
  auto dir = scratch();
  auto r = run("gen --shape 6x5 --tropical-rank 3 --count 2 --seed 5 --out-dir " + dir.string());
  CHECK(r.code == 0);
  auto first = dir / "m6x5_r3_s5_0.json";
  REQUIRE(fs::exists(first));
  REQUIRE(fs::exists(dir / "m6x5_r3_s5_1.json"));
  const std::string before = read_file(first.string());
  run("gen --shape 6x5 --tropical-rank 3 --count 1 --seed 5 --out-dir " + dir.string());
  CHECK(read_file(first.string()) == before);
  auto rank = run("rank " + first.string());
  CHECK(rank.out.find("tropical rank: 3") != std::string::npos);

  CHECK(run("gen --shape 2x2 --tropical-rank 3 --out-dir " + dir.string()).code == 3);
  CHECK(run("gen --shape banana --out-dir " + dir.string()).code == 3);
  fs::remove_all(dir);
}

TEST_CASE("corpus") {
  auto dir = scratch();
  auto out = (dir / "report.json").string();
  auto r = run("corpus --suite oracle --count 5 --seed 2 -o " + out);
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(read_file(out));
  CHECK(j["failed"] == 0);
  CHECK(run("corpus --suite nonsense").code == 3);
  fs::remove_all(dir);
}
