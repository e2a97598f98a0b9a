#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "jitnet/csv.hpp"

namespace fs = std::filesystem;
using namespace jitnet;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch_dir() {
  static const fs::path root =
      fs::temp_directory_path() / ("jitnet_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(root);
  return root;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("stdout_" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("stderr_" + std::to_string(counter));
  ++counter;
  const std::string command = std::string(JITNET_CLI_PATH) + " " + args + " >" + out.string() +
                              " 2>" + err.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

std::set<std::pair<int, int>> parse_pairs(const std::string& csv_text) {
  std::istringstream in(csv_text);
  const CsvTable table = read_csv(in);
  std::set<std::pair<int, int>> pairs;
  const std::size_t client = table.column("client_slot");
  const std::size_t server = table.column("server_slot");
  for (const auto& row : table.rows) {
    pairs.insert({std::stoi(row[client]), std::stoi(row[server])});
  }
  return pairs;
}

std::string write_manifest(const std::string& name, const std::string& body) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << body;
  return path.string();
}

}  // namespace

TEST_CASE("allocate emits the full packing as CSV on stdout") {
  const RunResult r = run_cli("allocate --n 10 --beta 3");
  REQUIRE(r.exit_code == 0);
  CHECK(parse_pairs(r.out) ==
        std::set<std::pair<int, int>>{{0, 3}, {6, 9}, {2, 5}, {8, 1}, {4, 7}});
}

TEST_CASE("allocate reports infeasible packings on stderr") {
  const RunResult r = run_cli("allocate --n 10 --beta 2");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("period") != std::string::npos);
}

TEST_CASE("allocate solves per-pair minimum distances") {
  const RunResult r = run_cli("allocate --n 10 --offsets 2,2,2,2,2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.find("exact assignment, total distance 11") != std::string::npos);
  CHECK(parse_pairs(r.out).size() == 5);
}

TEST_CASE("allocate places evenly spaced pairs and honors the phase flag") {
  const RunResult spaced = run_cli("allocate --n 64 --beta 8 --pairs 2");
  REQUIRE(spaced.exit_code == 0);
  CHECK(parse_pairs(spaced.out) == std::set<std::pair<int, int>>{{0, 8}, {32, 40}});

  const RunResult shifted = run_cli("allocate --n 10 --beta 3 --phase server_first");
  REQUIRE(shifted.exit_code == 0);
  CHECK(parse_pairs(shifted.out) ==
        std::set<std::pair<int, int>>{{3, 6}, {9, 2}, {5, 8}, {1, 4}, {7, 0}});
}

TEST_CASE("allocate requires a placement request") {
  CHECK(run_cli("allocate --n 10").exit_code == 1);
}

TEST_CASE("simulate rejects a missing scenario file") {
  CHECK(run_cli("simulate --scenario /nonexistent.manifest").exit_code != 0);
}

TEST_CASE("simulate writes the full output directory and analyze consumes it") {
  const std::string manifest = write_manifest("mini.manifest",
                                              "[run]\n"
                                              "kind = tdma\n"
                                              "frames = 60\n"
                                              "seed = 5\n"
                                              "[timing]\n"
                                              "jitter_model = none\n");
  const fs::path dir = scratch_dir() / "mini_out";
  const RunResult sim = run_cli("simulate --scenario " + manifest + " --output " + dir.string());
  REQUIRE(sim.exit_code == 0);
  CHECK(fs::exists(dir / "mini.manifest"));
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(fs::exists(dir / "occupancy.csv"));
  CHECK(fs::exists(dir / "controller.csv"));
  CHECK(fs::exists(dir / "summary.txt"));
  const std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("rtt_mean_ns: 510000.000") != std::string::npos);

  const RunResult ana = run_cli("analyze --input " + dir.string());
  REQUIRE(ana.exit_code == 0);
  CHECK(fs::exists(dir / "analysis.txt"));
  CHECK(fs::exists(dir / "figure_rtt.csv"));
  CHECK(fs::exists(dir / "figure_slack.csv"));
  CHECK(fs::exists(dir / "figure_correction.csv"));
  CHECK(fs::exists(dir / "figure_age.csv"));
  const std::string analysis = slurp(dir / "analysis.txt");
  CHECK(analysis.find("decomposition_violations: 0") != std::string::npos);
  CHECK(analysis.find("recurrence_residual_ns: 0") != std::string::npos);

  const RunResult one = run_cli("analyze --input " + dir.string() + " --figure age --stride 7 " +
                                "--output " + (dir / "aged").string());
  REQUIRE(one.exit_code == 0);
  CHECK(fs::exists(dir / "aged" / "figure_age.csv"));
  CHECK_FALSE(fs::exists(dir / "aged" / "figure_rtt.csv"));
}

TEST_CASE("two runs of one scenario produce byte-identical outputs") {
  const std::string manifest = write_manifest("rep.manifest",
                                              "[run]\n"
                                              "kind = tdma\n"
                                              "frames = 400\n"
                                              "seed = 31\n"
                                              "[clock]\n"
                                              "setting = 2\n");
  const fs::path a = scratch_dir() / "rep_a";
  const fs::path b = scratch_dir() / "rep_b";
  REQUIRE(run_cli("simulate --scenario " + manifest + " --output " + a.string()).exit_code == 0);
  REQUIRE(run_cli("simulate --scenario " + manifest + " --output " + b.string()).exit_code == 0);
  for (const char* file : {"trace.csv", "occupancy.csv", "controller.csv", "summary.txt"}) {
    CHECK(slurp(a / file) == slurp(b / file));
  }
  CHECK(!slurp(a / "trace.csv").empty());
}

TEST_CASE("a seed range fans out into per-seed subdirectories") {
  const std::string manifest = write_manifest("fan.manifest",
                                              "[run]\n"
                                              "kind = tdma\n"
                                              "frames = 30\n");
  const fs::path dir = scratch_dir() / "fan_out";
  const RunResult r =
      run_cli("simulate --scenario " + manifest + " --seeds 1..3 --output " + dir.string());
  REQUIRE(r.exit_code == 0);
  for (const char* seed : {"seed-1", "seed-2", "seed-3"}) {
    CHECK(fs::exists(dir / seed / "trace.csv"));
  }
  // Different seeds draw different jitter.
  CHECK(slurp(dir / "seed-1" / "trace.csv") != slurp(dir / "seed-2" / "trace.csv"));
}

TEST_CASE("the output root environment variable anchors default outputs") {
  const fs::path root = scratch_dir() / "env_root";
  ::setenv("JITNET_OUTPUT_ROOT", root.string().c_str(), 1);
  const std::string manifest = write_manifest("envy.manifest",
                                              "[run]\n"
                                              "kind = tdma\n"
                                              "name = envy\n"
                                              "frames = 20\n");
  const RunResult r = run_cli("simulate --scenario " + manifest);
  ::unsetenv("JITNET_OUTPUT_ROOT");
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(root / "envy" / "trace.csv"));
}

TEST_CASE("a queue overflow exits with the partial-output code") {
  const std::string manifest = write_manifest("burst.manifest",
                                              "[run]\n"
                                              "kind = tdma\n"
                                              "frames = 40000\n"
                                              "[timing]\n"
                                              "jitter_model = none\n"
                                              "[clock]\n"
                                              "setting = 3\n"
                                              "[controller]\n"
                                              "mode = baseline\n"
                                              "client_phase = 0ns\n"
                                              "fifo_capacity = 4\n");
  const fs::path dir = scratch_dir() / "burst_out";
  const RunResult r = run_cli("simulate --scenario " + manifest + " --output " + dir.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("overflow") != std::string::npos);
  CHECK(fs::exists(dir / "trace.csv"));
}

TEST_CASE("contention scenarios produce waits and a csma analysis") {
  const std::string manifest = write_manifest("cont.manifest",
                                              "[run]\n"
                                              "kind = csma\n"
                                              "packets = 200\n"
                                              "[csma]\n"
                                              "mode = pull\n");
  const fs::path dir = scratch_dir() / "cont_out";
  REQUIRE(run_cli("simulate --scenario " + manifest + " --output " + dir.string()).exit_code == 0);
  CHECK(fs::exists(dir / "waits.csv"));
  CHECK(slurp(dir / "summary.txt").find("kind: csma") != std::string::npos);

  const RunResult ana = run_cli("analyze --input " + dir.string());
  REQUIRE(ana.exit_code == 0);
  CHECK(slurp(dir / "analysis.txt").find("wait_count: 200") != std::string::npos);
}
