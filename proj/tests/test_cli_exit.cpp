#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

const std::filesystem::path kBinary = JETKERNEL_BINARY;
const std::filesystem::path kData = JETKERNEL_TEST_DATA;

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "jetkernel_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

/// Exit status of the CLI with the given arguments; stdout goes to `out`.
int run(const std::string& args, const std::filesystem::path& out = "/dev/null") {
  const std::string cmd = kBinary.string() + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run("kernel") == 1);
  CHECK(run("kernel --op " + (kData / "missing.dop").string()) == 1);
  CHECK(run("verify --suite nonsense") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("--help") == 0);
}

TEST_CASE("kernel prints per-degree dimensions") {
  const auto out = scratch() / "dims.csv";
  CHECK(run("kernel --op " + (kData / "witness2.dop").string() + " --nmax 12", out) == 0);
  std::string expected = "degree,dim,stabilized\n";
  for (int n = 0; n <= 12; ++n) expected += std::to_string(n) + ",2,1\n";
  CHECK(slurp(out) == expected);
}

TEST_CASE("kernel writes a json report with a sibling csv") {
  const auto json = scratch() / "k.json";
  std::filesystem::remove(json);
  CHECK(run("kernel --op " + (kData / "witness2.dop").string() + " --nmax 3 --out " + json.string()) == 0);
  CHECK(std::filesystem::exists(json));
  CHECK(std::filesystem::exists(scratch() / "k.csv"));
}

TEST_CASE("a passing verification exits 0") {
  CHECK(run("verify --suite lem1121 --samples 5") == 0);
  CHECK(run("verify --suite basechange --samples 4") == 0);
}

TEST_CASE("the triangular zero-kernel suite reports no nonzero kernels") {
  const auto log = scratch() / "verify.log";
  const std::string cmd = kBinary.string() + " verify --suite lem2411 --samples 200 --seed 7 > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(slurp(log).find("0 nonzero kernels") != std::string::npos);
}

TEST_CASE("a counterexample exits 2") {
  // order-0 entries only: samples with coefficient -1 make the diagonal vanish
  CHECK(run("verify --suite prop1124 --order 1 --coefdeg 0 --r 1 --bound 1 --samples 20 --nmax 2") == 2);
}
