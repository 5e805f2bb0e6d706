#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "golden.hpp"
#include "hypfl/cli.hpp"
#include "hypfl/io.hpp"

using namespace hypfl;
using namespace hypfl::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct InDir {
  fs::path previous = fs::current_path();
  explicit InDir(const fs::path& p) {
    fs::create_directories(p);
    fs::current_path(p);
  }
  ~InDir() { fs::current_path(previous); }
};

}  // namespace

TEST_CASE("gen then norm prints 1") {
  InDir dir(fs::path(HYPFL_SCRATCH_DIR) / "cli-gen");
  REQUIRE(cli({"gen", "--kind", "single-mode", "--k", "3", "--n", "64", "--d", "1", "--out", "f.gfn"}).code == 0);
  const auto r = cli({"norm", "--space", "fl", "--p", "1", "--s", "0", "--input", "f.gfn"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["value"].get<double>() == doctest::Approx(1).epsilon(1e-14));
  CHECK(Json::parse(r.out)["config"]["command"] == "norm");
}

TEST_CASE("exit-code contract") {
  InDir dir(fs::path(HYPFL_SCRATCH_DIR) / "cli-exit");
  const auto usage = cli({"norm"});
  CHECK(usage.code == 2);
  CHECK(Json::parse(usage.err)["error"] == "UsageError");
  const auto bad = cli({"norm", "--input", "nothing.gfn"});
  CHECK(bad.code == 2);
  CHECK(Json::parse(bad.err)["exit_code"] == 2);
  CHECK(cli({"--tolerance-profile", "lax", "gen", "--kind", "single-mode", "--k", "1", "--out", "x.gfn"}).code == 2);
  CHECK(cli({"predicate", "--which", "b24", "--p", "0"}).code == 2);
  CHECK(cli({"gen", "--kind", "single-mode", "--k", "20", "--n", "64", "--out", "x.gfn"}).code == 2);  // headroom
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("wave fixture matches the closed form") {
  const fs::path data = HYPFL_TEST_DATA_DIR;
  InDir dir(fs::path(HYPFL_SCRATCH_DIR) / "cli-wave");
  const auto cfg = (data / "wave" / "problem.json").string();
  for (double t : {0.5, 1.3}) {
    const auto r = cli({"solve", "--config", cfg, "--t", std::to_string(t), "--out", "v.gfn", "--norms", "2:0"});
    REQUIRE(r.code == 0);
    const auto v = read_gfn("v.gfn");
    double err = 0;
    for (int i = 0; i < 64; ++i) {
      const double x = i / 64.0;
      const double exact = std::cos(2 * kPi * t) * std::cos(2 * kPi * x) +
                           0.5 * std::cos(6 * kPi * t) * std::sin(6 * kPi * x) +
                           std::sin(4 * kPi * t) / (4 * kPi) * std::sin(4 * kPi * x);
      err = std::max(err, std::abs(v.values(i) - Complex<double>(exact)));
    }
    CHECK(err < 1e-9);
    CHECK(Json::parse(r.out)["report"]["method"] == "exact-spectral");
  }
}

TEST_CASE("golden CLI fixtures reproduce byte for byte") {
  const auto results = run_golden(HYPFL_TEST_DATA_DIR, fs::path(HYPFL_SCRATCH_DIR) / "golden");
  CHECK(results.size() >= 15);
  for (const auto& r : results) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.pass);
  }
}
