#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#include "cyclewalk/presets.hpp"
#include "cyclewalk/state_io.hpp"

using namespace cyclewalk;

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("cyclewalk-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& tag) {
  const fs::path out = work_dir() / (tag + ".out");
  const fs::path err = work_dir() / (tag + ".err");
  const std::string cmd = std::string(CYCLEWALK_CLI_PATH) + " " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, slurp(out), slurp(err)};
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits cleanly, bad usage does not") {
  CHECK(run_cli("--help", "help").exit_code == 0);
  CHECK(run_cli("simulate --help", "help-sim").exit_code == 0);
  CHECK(run_cli("frobnicate", "bad-subcommand").exit_code == 2);
  CHECK(run_cli("simulate", "missing-initial").exit_code == 2);
  CHECK(run_cli("rates --initial no-such-preset", "bad-preset").exit_code == 2);
  CHECK(run_cli("simulate --initial case-i --t-max -3", "bad-tmax").exit_code == 2);
  CHECK(run_cli("rates --initial fig3a", "rates-on-chain").exit_code == 2);
}

TEST_CASE("rates emits the expected table") {
  const CliResult r = run_cli("rates --initial case-i", "rates-case-i");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("quantity,value") == 0);
  CHECK(r.out.find("reflected,0.1999") != std::string::npos);
  CHECK(r.out.find("transmitted,0.7999") != std::string::npos);
  CHECK(r.out.find("t_used,") != std::string::npos);
}

TEST_CASE("a too-small window aborts with exit code 3") {
  const CliResult r =
      run_cli("simulate --initial case-i --t-max 50 --radius 5", "overflow");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("window") != std::string::npos);
}

TEST_CASE("corrupted state files abort before any output is written") {
  const fs::path bad = work_dir() / "corrupt.json";
  std::ofstream(bad) << R"({"graph": "c4-prime", "radius": 1, "amplitudes": [{"cell": 0,)";
  const fs::path out = work_dir() / "corrupt-run.csv";
  const CliResult r = run_cli("simulate --initial " + bad.string() + " --t-max 5 --out " +
                                  out.string() + " --summary -",
                              "corrupt");
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(r.out.empty());
}

TEST_CASE("state files written by the library drive the tools") {
  const ArcSpace s = ArcSpace::build(GraphKind::C4Prime, 0);
  const WalkState st = make_coin_state(s, preset_amplitudes("fig3b"));
  const fs::path file = work_dir() / "fig3b.json";
  write_state(file.string(), st);

  const CliResult loc = run_cli("localize --initial " + file.string(), "localize-file");
  CHECK(loc.exit_code == 0);
  CHECK(loc.out.find("\"localized\": true") != std::string::npos);
  const std::size_t at = loc.out.find("\"delta\": ");
  REQUIRE(at != std::string::npos);
  CHECK(std::abs(std::stod(loc.out.substr(at + 9)) - 0.5) < 1e-12);

  const CliResult sim =
      run_cli("simulate --initial " + file.string() + " --t-max 8 --summary -", "simulate-file");
  CHECK(sim.exit_code == 0);
}

TEST_CASE("verify filters criteria and reports failures by exit code") {
  const CliResult one = run_cli("verify --only scattering", "verify-one");
  CHECK(one.exit_code == 0);
  CHECK(count_lines(one.out) == 1);
  CHECK(one.out.find("[PASS] 1 scattering-rates") == 0);

  const CliResult none = run_cli("verify --only no-such-criterion", "verify-none");
  CHECK(none.exit_code == 2);

  const fs::path report = work_dir() / "report.json";
  const CliResult two =
      run_cli("verify --only trapped-mass --only cross --report " + report.string(),
              "verify-two");
  CHECK(two.exit_code == 0);
  CHECK(count_lines(two.out) == 2);
  const std::string rp = slurp(report);
  CHECK(rp.find("\"name\": \"trapped-mass\"") != std::string::npos);
  CHECK(rp.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("identical configuration and seed give identical bytes") {
  const auto run_twice = [](const std::string& args, const std::string& tag) {
    const CliResult a = run_cli(args, tag + "-a");
    const CliResult b = run_cli(args, tag + "-b");
    CHECK(a.exit_code == 0);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  };
  run_twice("density --initial fig3b --grid 512 --cdf-at -0.2,0.1 --moments 2", "det-density");
  run_twice("simulate --initial uniform --t-max 30", "det-simulate");
  run_twice("spectrum --grid 64", "det-spectrum");
  run_twice("verify --only band-structure --seed 99", "det-verify");
}

TEST_CASE("spectrum emits one row per momentum and branch") {
  const CliResult r = run_cli("spectrum --grid 16", "spectrum-16");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.out) == 1 + 16 * 6);
  CHECK(r.out.find("k,j,l,lambda,nu_re,nu_im,x,dxdk") == 0);
}

TEST_CASE("density accepts the ensemble and rejects tailed inputs") {
  const CliResult ens = run_cli("density --grid 256", "density-default");
  CHECK(ens.exit_code == 0);
  CHECK(ens.out.find("\"delta\": 0.40000000000000002") != std::string::npos);

  const ArcSpace tails = ArcSpace::build(GraphKind::TildeC4, 1);
  const WalkState st = make_coin_state(tails, preset_amplitudes("case-ii"));
  const fs::path file = work_dir() / "tailed.json";
  write_state(file.string(), st);
  const CliResult bad = run_cli("density --initial " + file.string(), "density-tailed");
  CHECK(bad.exit_code == 2);
}

}  // TEST_SUITE
