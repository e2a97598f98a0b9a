#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jitnet/analyzer.hpp"
#include "jitnet/csma.hpp"
#include "jitnet/csv.hpp"
#include "jitnet/manifest.hpp"
#include "jitnet/tdma.hpp"

namespace fs = std::filesystem;
using namespace jitnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;    // usage or configuration problems
constexpr int kExitPartial = 2;  // run terminated early; outputs incomplete

fs::path output_root() {
  if (const char* env = std::getenv("JITNET_OUTPUT_ROOT"); env && *env) return fs::path{env};
  return fs::path{"out"};
}

std::string format_mean(double value) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << value;
  return out.str();
}

void append_stats(std::ostringstream& out, const std::string& label,
                  std::span<const Tick> series) {
  if (series.empty()) {
    out << label << "_count: 0\n";
    return;
  }
  const SummaryStats stats = summarize(series);
  out << label << "_count: " << stats.count << '\n'
      << label << "_min_ns: " << stats.min << '\n'
      << label << "_mean_ns: " << format_mean(stats.mean) << '\n'
      << label << "_max_ns: " << stats.max << '\n'
      << label << "_p99_ns: " << stats.p99 << '\n';
}

std::string tdma_summary(const ScenarioConfig& scenario, const TdmaResult& result,
                         std::uint64_t seed) {
  std::ostringstream out;
  out << "scenario: " << scenario.name << '\n'
      << "kind: tdma\n"
      << "seed: " << seed << '\n'
      << "frames_run: " << result.frames_run << '\n'
      << "status: " << (result.overflow_terminated ? "partial-overflow" : "complete") << '\n'
      << "exchanges: " << result.traces.size() << '\n'
      << "client_underflows: " << result.client_underflows << '\n'
      << "server_skips: " << result.server_skips << '\n'
      << "stale_responses: " << result.stale_responses << '\n'
      << "missed_slots: " << result.missed_slots << '\n'
      << "late_pulls: " << result.late_pulls << '\n';

  std::vector<Tick> rtt, w_c, w_s;
  rtt.reserve(result.traces.size());
  for (const ExchangeTrace& tr : result.traces) {
    rtt.push_back(tr.rtt);
    w_c.push_back(tr.w_c);
    w_s.push_back(tr.w_s);
  }
  append_stats(out, "rtt", rtt);
  append_stats(out, "w_c", w_c);
  append_stats(out, "w_s", w_s);
  const std::vector<Tick> ages = information_age_series(result.traces);
  append_stats(out, "age", ages);

  // Pull-steered runs settle in the correction series; fixed-cadence runs
  // are judged on the client wait itself.
  std::vector<Tick> settle_series;
  const char* settle_label = "w_c";
  if (!result.telemetry.empty()) {
    settle_label = "correction";
    settle_series.reserve(result.telemetry.size());
    for (const ControllerSample& s : result.telemetry) settle_series.push_back(s.correction);
  } else {
    settle_series = w_c;
  }
  out << "convergence_series: " << settle_label << '\n';
  if (const auto window = detect_convergence(settle_series)) {
    out << "convergence_start: " << window->start << '\n'
        << "convergence_mean_ns: " << format_mean(window->mean) << '\n';
  } else {
    out << "convergence_start: none\n";
  }
  return out.str();
}

std::string csma_summary(const ScenarioConfig& scenario, const CsmaResult& result,
                         std::uint64_t seed) {
  std::ostringstream out;
  out << "scenario: " << scenario.name << '\n'
      << "kind: csma\n"
      << "seed: " << seed << '\n'
      << "mode: " << (scenario.csma.mode == CsmaMode::Pull ? "pull" : "push") << '\n'
      << "packets: " << result.waits.size() << '\n';
  std::vector<Tick> waits;
  waits.reserve(result.waits.size());
  for (const CsmaWait& w : result.waits) waits.push_back(w.wait);
  append_stats(out, "wait", waits);
  return out.str();
}

int simulate_one(const ScenarioConfig& base, const Manifest& manifest, const fs::path& dir,
                 std::optional<std::uint64_t> seed_override) {
  ScenarioConfig scenario = base;
  if (seed_override) {
    scenario.tdma.seed = *seed_override;
    scenario.csma.seed = *seed_override;
  }
  fs::create_directories(dir);
  const fs::path manifest_name =
      manifest.source.empty() ? fs::path{"scenario.manifest"} : manifest.source.filename();
  save_file(dir / manifest_name, manifest.raw);

  if (scenario.kind == ScenarioKind::Tdma) {
    const TdmaResult result = run_experiment(scenario.tdma);
    {
      std::ostringstream buf;
      write_trace_csv(buf, result.traces);
      save_file(dir / "trace.csv", buf.str());
    }
    {
      std::ostringstream buf;
      write_occupancy_csv(buf, result.occupancy);
      save_file(dir / "occupancy.csv", buf.str());
    }
    if (!result.telemetry.empty()) {
      std::ostringstream buf;
      write_controller_csv(buf, result.telemetry);
      save_file(dir / "controller.csv", buf.str());
    }
    const std::string summary = tdma_summary(scenario, result, scenario.tdma.seed);
    save_file(dir / "summary.txt", summary);
    std::cout << dir.string() << ": " << result.traces.size() << " exchanges over "
              << result.frames_run << " frames"
              << (result.overflow_terminated ? " (terminated: client queue overflow)" : "")
              << '\n';
    if (result.overflow_terminated) {
      std::cerr << "warning: " << scenario.name
                << ": client queue overflowed; outputs are partial\n";
      return kExitPartial;
    }
    return kExitOk;
  }

  const CsmaResult result = run_csma(scenario.csma);
  {
    std::ostringstream buf;
    write_wait_csv(buf, result.waits,
                   scenario.csma.mode == CsmaMode::Pull ? "pull" : "push");
    save_file(dir / "waits.csv", buf.str());
  }
  save_file(dir / "summary.txt", csma_summary(scenario, result, scenario.csma.seed));
  std::cout << dir.string() << ": " << result.waits.size() << " contention cycles\n";
  return kExitOk;
}

struct SeedRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
};

SeedRange parse_seed_range(const std::string& text) {
  const std::size_t sep = text.find("..");
  if (sep == std::string::npos) {
    throw std::invalid_argument("--seeds expects the form A..B");
  }
  SeedRange range;
  range.first = std::stoull(text.substr(0, sep));
  range.last = std::stoull(text.substr(sep + 2));
  if (range.last < range.first) {
    throw std::invalid_argument("--seeds range is reversed");
  }
  return range;
}

int run_simulate(const std::string& scenario_path, std::string output,
                 std::optional<std::uint64_t> seed, const std::string& seeds) {
  const Manifest manifest = load_manifest(scenario_path);
  const ScenarioConfig scenario = scenario_from_manifest(manifest);
  const fs::path base_dir =
      output.empty() ? output_root() / scenario.name : fs::path{output};

  if (seeds.empty()) {
    return simulate_one(scenario, manifest, base_dir, seed);
  }
  const SeedRange range = parse_seed_range(seeds);
  int worst = kExitOk;
  for (std::uint64_t s = range.first; s <= range.last; ++s) {
    const fs::path dir = base_dir / ("seed-" + std::to_string(s));
    worst = std::max(worst, simulate_one(scenario, manifest, dir, s));
    if (s == range.last) break;  // guard u64 wrap at the top of the range
  }
  return worst;
}

int run_allocate(int num_slots, std::optional<int> offset, std::optional<int> pairs,
                 const std::string& offsets_text, const std::string& phase_text,
                 long long work_bound, const std::string& output) {
  std::vector<SlotPair> result_pairs;
  std::vector<int> offsets;

  if (!offsets_text.empty()) {
    std::size_t begin = 0;
    while (begin <= offsets_text.size()) {
      std::size_t comma = offsets_text.find(',', begin);
      if (comma == std::string::npos) comma = offsets_text.size();
      offsets.push_back(std::stoi(offsets_text.substr(begin, comma - begin)));
      begin = comma + 1;
      if (comma == offsets_text.size()) break;
    }
    const AllocationResult solved =
        solve_allocation(AllocationRequest{num_slots, offsets}, work_bound);
    result_pairs = solved.pairs;
    std::cerr << (solved.exact ? "exact assignment" : "heuristic assignment")
              << ", total distance " << solved.total_distance << '\n';
  } else if (offset) {
    const PackingPhase phase =
        phase_text == "server_first" ? PackingPhase::ServerFirst : PackingPhase::ClientFirst;
    result_pairs = pairs ? evenly_spaced_assignment(num_slots, *offset, *pairs)
                         : construct_full_packing(num_slots, *offset, phase);
    offsets.assign(result_pairs.size(), *offset);
  } else {
    std::cerr << "error: provide --beta (with optional --pairs) or --offsets\n";
    return kExitError;
  }

  validate_allocation(result_pairs, num_slots, offsets);
  std::ostringstream buf;
  write_allocation_csv(buf, result_pairs, offsets, num_slots);
  if (output.empty() || output == "-") {
    std::cout << buf.str();
  } else {
    save_file(output, buf.str());
  }
  return kExitOk;
}

TdmaResult load_tdma_outputs(const fs::path& dir) {
  TdmaResult result;
  const CsvTable trace = load_csv(dir / "trace.csv");
  const auto col = [&](const CsvTable& t, std::string_view name) { return t.column(name); };
  for (const auto& row : trace.rows) {
    ExchangeTrace tr;
    tr.frame = std::stoll(row[col(trace, "frame")]);
    tr.pair = std::stoi(row[col(trace, "pair")]);
    for (int i = 0; i <= 10; ++i) {
      tr.t[static_cast<std::size_t>(i)] =
          std::stoll(row[col(trace, "t" + std::to_string(i))]);
    }
    tr.d_c = std::stoll(row[col(trace, "d_c")]);
    tr.w_c = std::stoll(row[col(trace, "w_c")]);
    tr.t_phy_c = std::stoll(row[col(trace, "t_phy_c")]);
    tr.d_s = std::stoll(row[col(trace, "d_s")]);
    tr.w_s = std::stoll(row[col(trace, "w_s")]);
    tr.t_phy_s = std::stoll(row[col(trace, "t_phy_s")]);
    tr.rtt = std::stoll(row[col(trace, "rtt")]);
    result.traces.push_back(tr);
  }

  const CsvTable occupancy = load_csv(dir / "occupancy.csv");
  for (const auto& row : occupancy.rows) {
    OccupancyRow oc;
    oc.frame = std::stoll(row[col(occupancy, "frame")]);
    oc.slot = std::stoi(row[col(occupancy, "slot")]);
    oc.occupancy = std::stoi(row[col(occupancy, "occupancy")]);
    oc.underflow = row[col(occupancy, "underflow_flag")] == "1";
    result.occupancy.push_back(oc);
  }

  if (fs::exists(dir / "controller.csv")) {
    const CsvTable controller = load_csv(dir / "controller.csv");
    for (const auto& row : controller.rows) {
      ControllerSample s;
      s.packet = std::stoll(row[col(controller, "packet")]);
      s.frame = std::stoll(row[col(controller, "frame")]);
      s.pull_local = std::stoll(row[col(controller, "pull_local")]);
      s.pull_reference = std::stoll(row[col(controller, "pull_reference")]);
      s.offset = std::stoll(row[col(controller, "offset")]);
      s.d_c = std::stoll(row[col(controller, "d_c")]);
      s.slack = std::stoll(row[col(controller, "slack")]);
      s.correction = std::stoll(row[col(controller, "correction")]);
      s.missed = row[col(controller, "missed")] == "1";
      result.telemetry.push_back(s);
    }
  }
  return result;
}

fs::path find_manifest(const fs::path& dir) {
  fs::path found;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".manifest") {
      if (!found.empty()) throw std::runtime_error("multiple .manifest files in " + dir.string());
      found = entry.path();
    }
  }
  if (found.empty()) throw std::runtime_error("no .manifest file in " + dir.string());
  return found;
}

int run_analyze(const std::string& input, const std::string& output,
                std::vector<std::string> figures, std::int64_t stride) {
  const fs::path in_dir{input};
  const fs::path out_dir = output.empty() ? in_dir : fs::path{output};
  fs::create_directories(out_dir);
  const Manifest manifest = load_manifest(find_manifest(in_dir));
  const ScenarioConfig scenario = scenario_from_manifest(manifest);

  if (scenario.kind == ScenarioKind::Csma) {
    const CsvTable table = load_csv(in_dir / "waits.csv");
    std::vector<Tick> waits;
    for (const auto& row : table.rows) {
      waits.push_back(std::stoll(row[table.column("wait_ns")]));
    }
    std::ostringstream out;
    out << "scenario: " << scenario.name << "\nkind: csma\n";
    append_stats(out, "wait", waits);
    save_file(out_dir / "analysis.txt", out.str());
    std::cout << out.str();
    return kExitOk;
  }

  const TdmaResult result = load_tdma_outputs(in_dir);
  std::ostringstream out;
  out << "scenario: " << scenario.name << "\nkind: tdma\n";

  std::vector<Tick> rtt, w_c;
  std::int64_t identity_violations = 0;
  for (const ExchangeTrace& tr : result.traces) {
    rtt.push_back(tr.rtt);
    w_c.push_back(tr.w_c);
    if (recompose_rtt(tr) != tr.rtt || tr.t[10] - tr.t[0] != tr.rtt) ++identity_violations;
  }
  append_stats(out, "rtt", rtt);
  append_stats(out, "w_c", w_c);
  append_stats(out, "age", information_age_series(result.traces));
  out << "decomposition_violations: " << identity_violations << '\n';

  if (!result.telemetry.empty()) {
    const SyncConfig sync{scenario.tdma.alpha, scenario.tdma.slack_target,
                          scenario.tdma.frame()};
    out << "recurrence_residual_ns: " << verify_recurrence(result.telemetry, sync) << '\n';
    std::vector<Tick> corrections;
    corrections.reserve(result.telemetry.size());
    for (const ControllerSample& s : result.telemetry) corrections.push_back(s.correction);
    out << "convergence_series: correction\n";
    if (const auto window = detect_convergence(corrections)) {
      out << "convergence_start: " << window->start << '\n'
          << "convergence_mean_ns: " << format_mean(window->mean) << '\n';
    } else {
      out << "convergence_start: none\n";
    }
  } else if (!w_c.empty()) {
    out << "convergence_series: w_c\n";
    if (const auto window = detect_convergence(w_c)) {
      out << "convergence_start: " << window->start << '\n'
          << "convergence_mean_ns: " << format_mean(window->mean) << '\n';
    } else {
      out << "convergence_start: none\n";
    }
  }

  save_file(out_dir / "analysis.txt", out.str());
  std::cout << out.str();

  if (figures.size() == 1 && figures.front() == "all") {
    figures = {"rtt", "slack", "correction", "age"};
  }
  for (const std::string& name : figures) {
    FigureKind kind;
    if (name == "rtt") {
      kind = FigureKind::RttComponents;
    } else if (name == "slack") {
      kind = FigureKind::SlackSeries;
    } else if (name == "correction") {
      kind = FigureKind::CorrectionSeries;
    } else if (name == "age") {
      kind = FigureKind::AgeSeries;
    } else {
      std::cerr << "error: unknown figure '" << name << "'\n";
      return kExitError;
    }
    const std::vector<FigureRow> rows = figure_rows(kind, result, stride);
    std::ostringstream buf;
    write_figure_csv(buf, rows);
    save_file(out_dir / ("figure_" + name + ".csv"), buf.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic slotted-network request-response simulator"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "run a scenario manifest");
  std::string scenario_path;
  std::string sim_output;
  std::string seeds;
  std::optional<std::uint64_t> seed;
  simulate->add_option("--scenario", scenario_path, "scenario manifest file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--output", sim_output,
                       "output directory (default: $JITNET_OUTPUT_ROOT/<name>)");
  simulate->add_option("--seed", seed, "override the manifest seed");
  simulate->add_option("--seeds", seeds, "run a seed range A..B into per-seed subdirectories");

  auto* allocate = app.add_subcommand("allocate", "compute a slot allocation");
  int num_slots = 0;
  std::optional<int> offset;
  std::optional<int> pairs;
  std::string offsets_text;
  std::string phase_text = "client_first";
  long long work_bound = 10'000'000;
  std::string alloc_output;
  allocate->add_option("--n,--num-slots", num_slots, "slots per frame")->required();
  allocate->add_option("--beta,--offset", offset, "uniform client-to-server slot distance");
  allocate->add_option("--pairs", pairs, "place this many evenly spaced pairs");
  allocate->add_option("--offsets", offsets_text,
                       "comma-separated per-pair minimum distances (optimizing solver)");
  allocate->add_option("--phase", phase_text, "client_first or server_first pairing")
      ->check(CLI::IsMember({"client_first", "server_first"}));
  allocate->add_option("--work-bound", work_bound,
                       "assignment-count budget for the exhaustive solver");
  allocate->add_option("--output", alloc_output, "output file, '-' for stdout");

  auto* analyze = app.add_subcommand("analyze", "summarize a simulation output directory");
  std::string analyze_input;
  std::string analyze_output;
  std::vector<std::string> figures{"all"};
  std::int64_t stride = 100;
  analyze->add_option("--input", analyze_input, "simulate output directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  analyze->add_option("--output", analyze_output, "where to write analysis outputs");
  analyze->add_option("--figure", figures, "rtt, slack, correction, age, or all");
  analyze->add_option("--stride", stride, "keep every Nth figure point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (simulate->parsed()) return run_simulate(scenario_path, sim_output, seed, seeds);
    if (allocate->parsed()) {
      return run_allocate(num_slots, offset, pairs, offsets_text, phase_text, work_bound,
                          alloc_output);
    }
    if (analyze->parsed()) return run_analyze(analyze_input, analyze_output, figures, stride);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
