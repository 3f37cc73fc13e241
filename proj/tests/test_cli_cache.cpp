#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "nlohmann/json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef SATAKE_CLI_PATH
#error "SATAKE_CLI_PATH must point at the satake executable"
#endif

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "satake-cli-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    REQUIRE(mkdtemp(buf.data()) != nullptr);
    path = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct CliResult {
  int exit_code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with SATAKE_CACHE pointed at cache_dir, capturing both streams.
CliResult run_cli(const fs::path& cache_dir, const std::string& args) {
  static int counter = 0;
  TempDir scratch;
  fs::path out = scratch.path / ("out" + std::to_string(counter));
  fs::path err = scratch.path / ("err" + std::to_string(counter));
  ++counter;
  std::string cmd = "SATAKE_CACHE='" + cache_dir.string() + "' '" SATAKE_CLI_PATH "' " +
                    args + " > '" + out.string() + "' 2> '" + err.string() + "'";
  int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = (rc != -1 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("contract examples are byte-exact") {
  TempDir cache;
  CliResult r = run_cli(cache.path, "tensor A1 --lambda 1 --mu 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "2:1, 0:1\n");

  r = run_cli(cache.path, "qmult A2 --lambda 1,1 --mu 0,0 --json");
  REQUIRE(r.exit_code == 0);
  json o = json::parse(r.out);
  CHECK(o.at("poly") == json({{"1", 1}, {"2", 1}}));
  CHECK(o.at("multiplicity") == 2);

  r = run_cli(cache.path, "qmult A2 --lambda 1,1 --mu 0,0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "q + q^2   (multiplicity 2)\n");
}

TEST_CASE("exit codes distinguish usage, math, and budget failures") {
  TempDir cache;
  // Usage errors: exit 2.
  CHECK(run_cli(cache.path, "rootdata E8").exit_code == 2);
  CHECK(run_cli(cache.path, "qmult A2 --lambda 1 --mu 0,0").exit_code == 2);
  CHECK(run_cli(cache.path, "qmult A2 --lambda -1,0 --mu 0,0").exit_code == 2);
  CHECK(run_cli(cache.path, "klpoly A2 --lambda 1,0 --mu 0,0 --lattice root").exit_code == 2);
  CHECK(run_cli(cache.path, "nonsense A1").exit_code == 2);
  CHECK(run_cli(cache.path, "pairing A1 --lambda 2 --word 'a9^2'").exit_code == 2);
  // Budget overruns: exit 3.
  CHECK(run_cli(cache.path,
                "tensor A2 --lambda 3,3 --mu 3,3 --budget 100").exit_code == 3);
  CHECK(run_cli(cache.path, "brylinski A2 --lambda 3,3 --mu 0,0 --budget 10").exit_code == 3);
  // Healthy commands: exit 0.
  CHECK(run_cli(cache.path, "rootdata G2").exit_code == 0);
  CHECK(run_cli(cache.path, "orbit C2 --lambda 1,0").exit_code == 0);
  CHECK(run_cli(cache.path, "minuscule A2").exit_code == 0);
  CHECK(run_cli(cache.path, "exponents B2").exit_code == 0);
}

TEST_CASE("representation-side commands answer in JSON") {
  TempDir cache;
  CliResult r = run_cli(cache.path, "brylinski A2 --lambda 1,1 --mu 0,0 --json");
  REQUIRE(r.exit_code == 0);
  json o = json::parse(r.out);
  CHECK(o.at("poly") == json({{"2", 1}, {"4", 1}}));
  CHECK(o.at("dominant_mu") == true);

  r = run_cli(cache.path, "hom-a A2 --lambda 1,1 --mu 1,1 --json");
  REQUIRE(r.exit_code == 0);
  o = json::parse(r.out);
  CHECK(o.at("total") == 10);
  CHECK(o.at("tensor_side") == 10);
  CHECK(o.at("by_degree") ==
        json({{"0", 1}, {"2", 2}, {"4", 3}, {"6", 3}, {"8", 1}}));

  r = run_cli(cache.path, "pairing A1 --lambda 2 --word a1^2 --json");
  REQUIRE(r.exit_code == 0);
  o = json::parse(r.out);
  CHECK(o.at("value") == "2");
  CHECK(o.at("degree_required") == 4);

  r = run_cli(cache.path, "exponents G2 --json");
  REQUIRE(r.exit_code == 0);
  o = json::parse(r.out);
  CHECK(o.at("exponents") == json::array({1, 5}));

  r = run_cli(cache.path, "stalks A2 --lambda 1,1 --json");
  REQUIRE(r.exit_code == 0);
  o = json::parse(r.out);
  REQUIRE(o.at("stalks").is_array());
  bool saw_origin = false;
  for (const auto& s : o["stalks"])
    if (s.at("mu") == json::array({0, 0})) {
      saw_origin = true;
      CHECK(s.at("in_closure") == true);
      CHECK(s.at("poly") == json({{"2", 1}, {"4", 1}}));
    }
  CHECK(saw_origin);
}

TEST_CASE("hecke and satake checks pass on healthy inputs") {
  TempDir cache;
  CliResult r = run_cli(cache.path, "hecke-check A2 --maxlen 3 --json");
  REQUIRE(r.exit_code == 0);
  json o = json::parse(r.out);
  CHECK(o.at("pass") == true);
  CHECK(o.at("lattice") == "root");

  r = run_cli(cache.path, "hecke-check A2 --extended --maxlen 3 --json");
  REQUIRE(r.exit_code == 0);
  o = json::parse(r.out);
  CHECK(o.at("pass") == true);
  CHECK(o.at("lattice") == "weight");
  // The extended ball covers all components, so strictly more elements.
  CHECK(o.at("checks").at("word_products").get<long long>() > 31);

  r = run_cli(cache.path, "satake-check A1 --lambda 2 --mu 2 --json");
  REQUIRE(r.exit_code == 0);
  o = json::parse(r.out);
  CHECK(o.at("match") == true);
  CHECK(o.at("parameter_free") == true);
  REQUIRE(o.at("constituents").is_array());
  CHECK(o.at("constituents").size() == 3);

  // Extended Hecke checks require the weight lattice.
  CHECK(run_cli(cache.path, "hecke-check A2 --extended --lattice root").exit_code == 2);
}

TEST_CASE("klpoly JSON is byte-identical between cold and warm cache") {
  TempDir cache;
  const std::string cmd = "klpoly A2 --lambda 1,1 --mu 0,0 --json";
  CliResult cold = run_cli(cache.path, cmd);
  REQUIRE(cold.exit_code == 0);
  json o = json::parse(cold.out);
  CHECK(o.at("poly") == json({{"0", 1}, {"1", 1}}));
  CHECK(o.at("comparable") == true);
  CHECK(o.at("length_x") == 3);
  CHECK(o.at("length_y") == 7);

  // The cache file exists and gained records.
  fs::path file = cache.path / "kl.cache";
  REQUIRE(fs::exists(file));
  std::string first_run = slurp(file);
  CHECK(first_run.rfind("SATAKE-KL-CACHE v1\n", 0) == 0);
  CHECK(first_run.size() > std::string("SATAKE-KL-CACHE v1\n").size());

  CliResult warm = run_cli(cache.path, cmd);
  REQUIRE(warm.exit_code == 0);
  CHECK(warm.out == cold.out);
  CHECK(warm.err.empty());
  // A warm run recomputes nothing, so the append-only file is unchanged.
  CHECK(slurp(file) == first_run);
}

TEST_CASE("a corrupted cache self-heals without changing answers") {
  TempDir cache;
  const std::string cmd = "klpoly A2 --lambda 1,1 --mu 0,0 --json";
  CliResult cold = run_cli(cache.path, cmd);
  REQUIRE(cold.exit_code == 0);

  // Damage one byte in the middle of some record.
  fs::path file = cache.path / "kl.cache";
  std::string content = slurp(file);
  std::size_t header_end = content.find('\n') + 1;
  std::size_t target = header_end + (content.size() - header_end) / 2;
  REQUIRE(target < content.size());
  if (content[target] == '\n') ++target;
  content[target] = (content[target] == 'x') ? 'y' : 'x';
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << content;
  }

  CliResult healed = run_cli(cache.path, cmd);
  CHECK(healed.exit_code == 0);
  CHECK(healed.out == cold.out);
  CHECK(healed.err.find("skipping corrupt cache record") != std::string::npos);
}

TEST_CASE("unknown cache versions abort with a usage error") {
  TempDir cache;
  {
    std::ofstream out(cache.path / "kl.cache", std::ios::binary);
    out << "SATAKE-KL-CACHE v0\n";
  }
  CliResult r = run_cli(cache.path, "klpoly A1 --lambda 2 --mu 0");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("refusing to read it") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("verify runs its acceptance inventory") {
  TempDir cache;
  CliResult r = run_cli(cache.path, "verify --datum A1 --max-height 6 --no-subprocess --json");
  REQUIRE(r.exit_code == 0);
  json o = json::parse(r.out);
  CHECK(o.at("pass") == true);
  REQUIRE(o.at("criteria").is_array());
  CHECK(o.at("criteria").size() == 10);
  int passed = 0, skipped = 0;
  for (const auto& c : o["criteria"]) {
    std::string status = c.at("status");
    CHECK((status == "PASS" || status == "SKIP"));
    (status == "PASS" ? passed : skipped)++;
  }
  CHECK(passed >= 6);

  // Identical invocation, identical bytes.
  CliResult again = run_cli(cache.path, "verify --datum A1 --max-height 6 --no-subprocess --json");
  CHECK(again.exit_code == 0);
  CHECK(again.out == r.out);

  CHECK(run_cli(cache.path, "verify --datum Z9").exit_code == 2);
}
