#include "slu1/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace slu1;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const char* name) {
  fs::path p = fs::temp_directory_path() / "slu1_cli_tests" / name;
  fs::remove_all(p);
  return p;
}

} // namespace

TEST_SUITE("cli_export") {
  TEST_CASE("solve writes fields, log and manifest") {
    fs::path out = scratch("solve");
    int rc = run_cli({"--out", out.string(), "solve", "--boundary", R"({"cos":[0,1]})", "--a", "1", "--n", "33",
                      "--m", "128"});
    CHECK(rc == exit_ok);
    for (const char* f : {"f.csv", "u.csv", "v.csv", "convergence.json", "manifest.json"})
      CHECK(fs::exists(out / f));
    CHECK(slurp(out / "manifest.json").find("config_hash") != std::string::npos);
  }

  TEST_CASE("identical configs give identical artifacts") {
    fs::path a = scratch("det_a"), b = scratch("det_b");
    std::vector<std::string> args = {"solve", "--boundary", R"({"cos":[0,0,0.3],"sin":[0,0.2]})", "--a", "0",
                                     "--n", "33", "--m", "128"};
    auto with = [&](const fs::path& p) {
      std::vector<std::string> v = {"--out", p.string()};
      v.insert(v.end(), args.begin(), args.end());
      return v;
    };
    REQUIRE(run_cli(with(a)) == exit_ok);
    REQUIRE(run_cli(with(b)) == exit_ok);
    for (const char* f : {"f.csv", "u.csv", "v.csv", "convergence.json", "manifest.json"})
      CHECK(slurp(a / f) == slurp(b / f));
  }

  TEST_CASE("cone table") {
    fs::path out = scratch("cone");
    CHECK(run_cli({"--out", out.string(), "cone-phi", "--a-grid", "0.1:0.3:0.1"}) == exit_ok);
    std::string t = slurp(out / "phi_table.csv");
    CHECK(t.rfind("A,T,Phi,drift\n", 0) == 0);
    CHECK(std::count(t.begin(), t.end(), '\n') == 4);
  }

  TEST_CASE("exit codes") {
    fs::path out = scratch("bad");
    CHECK(run_cli({"--out", out.string(), "solve", "--boundary", "{bad"}) == exit_validation);
    CHECK(run_cli({"--out", out.string(), "solve", "--boundary", R"({"cos":[0,1]})", "--n", "16"}) ==
          exit_validation);
    CHECK(run_cli({"--out", out.string(), "solve", "--bogus"}) == exit_validation);
    CHECK(run_cli({"--out", out.string(), "cone-phi", "--a-grid", "0.9:1.1:0.1"}) == exit_validation);
    CHECK(run_cli({"--out", out.string(), "solve", "--boundary", R"({"cos":[0,0,3]})", "--a", "0.001", "--n", "33",
                   "--m", "128", "--max-iter", "1"}) == exit_numerical);
  }
}
