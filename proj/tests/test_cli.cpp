#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;  // stdout + stderr interleaved
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SELFINV_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("selfinv_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version flag") {
  const CliResult r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("sample emits a deterministic single-column CSV") {
  const CliResult r1 = run_cli("sample --dist log-uniform --n 5 --seed 9");
  const CliResult r2 = run_cli("sample --dist log-uniform --n 5 --seed 9");
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out.rfind("value\n", 0) == 0);
  CHECK(line_count(r1.out) == 6);
  const CliResult other = run_cli("sample --dist log-uniform --n 5 --seed 10");
  CHECK(other.out != r1.out);
  const CliResult stream = run_cli("sample --dist log-uniform --n 5 --seed 9 --streams 2");
  CHECK(stream.code == 0);
  CHECK(stream.out != r1.out);
}

TEST_CASE("sample accepts joint specs, via --joint or --dist") {
  const CliResult r = run_cli("sample --joint \"bivariate-normal(0.5)\" --n 4 --seed 2");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("x,y\n", 0) == 0);
  CHECK(line_count(r.out) == 5);

  const CliResult d = run_cli("sample --dist discrete-table:paper --n 3 --seed 1");
  CHECK(d.code == 0);
  CHECK(d.out.rfind("x,y\n", 0) == 0);
  std::stringstream ss(d.out);
  std::string line;
  std::getline(ss, line);  // header
  int rows = 0;
  while (std::getline(ss, line)) {
    ++rows;
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    for (const std::string& field :
         {line.substr(0, comma), line.substr(comma + 1)}) {
      CHECK((field == "1" || field == "2" || field == "3"));
    }
  }
  CHECK(rows == 3);
}

TEST_CASE("sample writes --out atomically with a provenance sidecar") {
  const fs::path csv = scratch_dir() / "draws.csv";
  const CliResult r = run_cli("sample --dist cauchy --n 2000 --seed 12 --out " +
                              csv.string());
  CHECK(r.code == 0);
  REQUIRE(fs::exists(csv));
  REQUIRE(fs::exists(csv.string() + ".json"));
  CHECK_FALSE(fs::exists(csv.string() + ".tmp"));
  const auto meta = nlohmann::json::parse(slurp(csv.string() + ".json"));
  CHECK(meta["spec"] == "cauchy");
  CHECK(meta["seed"] == 12);
  CHECK(meta["stream"] == 0);
  CHECK(meta["n"] == 2000);
  CHECK(meta["version"] == "0.1.0");
  CHECK(line_count(slurp(csv)) == 2001);
}

TEST_CASE("spec flag errors exit with code 2") {
  CHECK(run_cli("sample --dist cauchy --joint \"bivariate-normal(0.5)\"").code == 2);
  CHECK(run_cli("sample").code == 2);
  const CliResult bad = run_cli("sample --dist \"cauchy(\"");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("position") != std::string::npos);
  CHECK(bad.out.find('^') != std::string::npos);
  const CliResult unknown = run_cli("sample --dist frobnicate");
  CHECK(unknown.code == 2);
  CHECK(unknown.out.find("expected") != std::string::npos);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("check self-inverse: pass exits 0, reject exits 1") {
  const CliResult pass =
      run_cli("check self-inverse --dist cauchy --n 20000 --seed 3");
  CHECK(pass.code == 0);
  const auto jp = nlohmann::ordered_json::parse(pass.out);
  CHECK(jp["decision"] == "pass");
  CHECK(jp["alpha"] == 0.01);

  const CliResult reject =
      run_cli("check self-inverse --joint region-uniform:paper --n 10000 --seed 3");
  CHECK(reject.code == 1);
  const auto jr = nlohmann::ordered_json::parse(reject.out);
  CHECK(jr["decision"] == "reject");
  std::vector<std::string> keys;
  for (const auto& [key, value] : jr.items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"test", "statistic", "p_value", "alpha",
                                         "decision", "n", "seed", "diagnostics"});
}

TEST_CASE("check log-symmetry and theta") {
  CHECK(run_cli("check log-symmetry --dist \"f-ratio(4)\" --n 20000 --seed 4").code == 0);
  CHECK(run_cli("check log-symmetry --dist \"exponential(1)\" --n 10000 --seed 4 "
                "--alpha 0.001").code == 1);
}

TEST_CASE("check exchangeable, statistical and exact") {
  CHECK(run_cli("check exchangeable --joint \"bivariate-normal(0.5)\" --n 20000 "
                "--seed 5").code == 0);
  const CliResult exact =
      run_cli("check exchangeable --joint discrete-table:paper --exact");
  CHECK(exact.code == 1);
  const auto j = nlohmann::ordered_json::parse(exact.out);
  CHECK(j["p_value"].is_null());
  CHECK(j["decision"] == "reject");
  CHECK(run_cli("check exchangeable --joint region-uniform:paper --n 20000 "
                "--seed 5 --grid 0,1,2,3 --alpha 0.001").code == 1);
  // --exact needs a discrete table
  CHECK(run_cli("check exchangeable --joint \"bivariate-normal(0.5)\" --exact").code == 2);
}

TEST_CASE("check reads CSV files") {
  const fs::path csv = scratch_dir() / "cauchy.csv";
  REQUIRE(run_cli("sample --dist cauchy --n 2000 --seed 12 --out " + csv.string())
              .code == 0);
  CHECK(run_cli("check self-inverse --file " + csv.string() + " --alpha 0.001")
            .code == 0);

  const fs::path pairs = scratch_dir() / "pairs.csv";
  REQUIRE(run_cli("sample --joint \"bivariate-normal(0.3)\" --n 2000 --seed 12 --out " +
                  pairs.string())
              .code == 0);
  CHECK(run_cli("check exchangeable --file " + pairs.string() + " --grid 3")
            .code == 0);
  // column-count mismatch
  CHECK(run_cli("check exchangeable --file " + csv.string()).code == 2);
  CHECK(run_cli("check self-inverse --file /nonexistent.csv").code == 2);
}

TEST_CASE("density ratio emits the grid CSV") {
  const CliResult r = run_cli(
      "density ratio --joint region-uniform:paper --grid 0.1:0.9:5 --tol 1e-9");
  CHECK(r.code == 0);
  std::stringstream ss(r.out);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "z,f_Z,err_bound");
  bool saw_half = false;
  while (std::getline(ss, line)) {
    if (line.rfind("0.5,", 0) == 0) {
      saw_half = true;
      CHECK(line.find("1.333333333333333") != std::string::npos);
      CHECK(line.substr(line.rfind(',') + 1) == "0");
    }
  }
  CHECK(saw_half);
  CHECK(run_cli("density ratio --joint region-uniform:paper --grid bogus").code == 2);
  CHECK(run_cli("density ratio --joint \"cauchy(\"").code == 2);
}

TEST_CASE("experiment writes report directories and honors exit codes") {
  const fs::path out = scratch_dir() / "reports";
  const CliResult r =
      run_cli("experiment discrete-table --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("pass") != std::string::npos);
  const fs::path summary = out / "discrete-table" / "summary.json";
  REQUIRE(fs::exists(summary));
  const auto j = nlohmann::ordered_json::parse(slurp(summary));
  CHECK(j["experiment"] == "discrete-table");
  CHECK(j["pass"] == true);
  CHECK(j["version"] == "0.1.0");
  CHECK(fs::exists(out / "discrete-table" / "ratio_pmf.csv"));

  CHECK(run_cli("experiment bogus").code == 2);
  CHECK(run_cli("experiment discrete-table --alpha 0.5").code == 2);
}

}  // TEST_SUITE
