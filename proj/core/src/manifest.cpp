#include "jitnet/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace jitnet {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  return text;
}

[[noreturn]] void fail(std::string_view key, std::string_view what) {
  throw std::invalid_argument("manifest: " + std::string(key) + ": " + std::string(what));
}

std::int64_t parse_int64(std::string_view key, std::string_view value) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) fail(key, "expected an integer");
  return out;
}

std::uint64_t parse_uint64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail(key, "expected a non-negative integer");
  }
  return out;
}

int parse_int(std::string_view key, std::string_view value) {
  const std::int64_t wide = parse_int64(key, value);
  if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
    fail(key, "out of range");
  }
  return static_cast<int>(wide);
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  fail(key, "expected true or false");
}

Tick parse_duration_for(std::string_view key, std::string_view value) {
  try {
    return parse_duration(value);
  } catch (const std::exception& e) {
    fail(key, e.what());
  }
}

std::vector<SlotPair> parse_allocation(std::string_view key, std::string_view value) {
  std::vector<SlotPair> pairs;
  std::size_t begin = 0;
  while (begin <= value.size()) {
    std::size_t comma = value.find(',', begin);
    if (comma == std::string_view::npos) comma = value.size();
    const std::string_view item = trim(value.substr(begin, comma - begin));
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) fail(key, "expected client:server pairs");
    SlotPair pair;
    pair.client = parse_int(key, trim(item.substr(0, colon)));
    pair.server = parse_int(key, trim(item.substr(colon + 1)));
    pairs.push_back(pair);
    begin = comma + 1;
    if (comma == value.size()) break;
  }
  if (pairs.empty()) fail(key, "expected at least one pair");
  return pairs;
}

}  // namespace

const std::string* Manifest::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

Manifest parse_manifest(std::string_view text) {
  Manifest manifest;
  manifest.raw = std::string(text);

  std::string section;
  std::size_t line_no = 0;
  std::istringstream stream{manifest.raw};
  std::string line;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3) {
        throw std::invalid_argument("manifest: line " + std::to_string(line_no) +
                                    ": malformed section header");
      }
      section = std::string(trim(body.substr(1, body.size() - 2)));
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("manifest: line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    if (section.empty()) {
      throw std::invalid_argument("manifest: line " + std::to_string(line_no) +
                                  ": key outside any [section]");
    }
    const std::string key = section + "." + std::string(trim(body.substr(0, eq)));
    const std::string value{trim(body.substr(eq + 1))};
    if (manifest.find(key)) {
      throw std::invalid_argument("manifest: duplicate key " + key);
    }
    manifest.entries.emplace_back(key, value);
  }
  return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Manifest manifest = parse_manifest(buffer.str());
  manifest.source = path;
  return manifest;
}

Tick parse_duration(std::string_view text) {
  text = trim(text);
  Tick unit = 0;
  std::string_view digits;
  if (text.ends_with("ns")) {
    unit = 1;
    digits = text.substr(0, text.size() - 2);
  } else if (text.ends_with("us")) {
    unit = kMicrosecond;
    digits = text.substr(0, text.size() - 2);
  } else if (text.ends_with("ms")) {
    unit = kMillisecond;
    digits = text.substr(0, text.size() - 2);
  } else if (text.ends_with("s")) {
    unit = kSecond;
    digits = text.substr(0, text.size() - 1);
  } else {
    throw std::invalid_argument("duration '" + std::string(text) +
                                "' needs a ns/us/ms/s suffix");
  }
  const Rational value = parse_rational(trim(digits));
  const __int128 scaled = static_cast<__int128>(value.num) * unit;
  if (scaled % value.den != 0) {
    throw std::invalid_argument("duration '" + std::string(text) +
                                "' is not a whole number of ticks");
  }
  const __int128 ticks = scaled / value.den;
  if (ticks > std::numeric_limits<Tick>::max() || ticks < std::numeric_limits<Tick>::min()) {
    throw std::invalid_argument("duration '" + std::string(text) + "' overflows");
  }
  return static_cast<Tick>(ticks);
}

ScenarioConfig scenario_from_manifest(const Manifest& manifest) {
  ScenarioConfig scenario;
  if (const std::string* kind = manifest.find("run.kind")) {
    if (*kind == "tdma") {
      scenario.kind = ScenarioKind::Tdma;
    } else if (*kind == "csma") {
      scenario.kind = ScenarioKind::Csma;
    } else {
      fail("run.kind", "expected tdma or csma");
    }
  }
  scenario.name = manifest.source.empty() ? "scenario" : manifest.source.stem().string();

  const bool tdma = scenario.kind == ScenarioKind::Tdma;
  ExperimentConfig& exp = scenario.tdma;
  CsmaConfig& csma = scenario.csma;

  for (const auto& [key, value] : manifest.entries) {
    if (key == "run.kind") continue;
    if (key == "run.name") {
      scenario.name = value;
    } else if (key == "run.seed") {
      const std::uint64_t seed = parse_uint64(key, value);
      exp.seed = seed;
      csma.seed = seed;
    } else if (tdma && key == "run.frames") {
      exp.num_frames = parse_int64(key, value);
    } else if (!tdma && key == "run.packets") {
      csma.num_packets = parse_int(key, value);
    } else if (tdma && key == "network.num_slots") {
      exp.num_slots = parse_int(key, value);
    } else if (tdma && key == "network.slot_duration") {
      exp.slot = parse_duration_for(key, value);
    } else if (tdma && key == "network.propagation_delay") {
      exp.propagation = parse_duration_for(key, value);
    } else if (tdma && key == "network.allocation") {
      exp.allocation = parse_allocation(key, value);
    } else if (tdma && key == "timing.client_delay") {
      exp.client_delay = parse_duration_for(key, value);
    } else if (tdma && key == "timing.server_delay") {
      exp.server_delay = parse_duration_for(key, value);
    } else if (tdma && key == "timing.jitter_model") {
      if (value == "none") {
        exp.jitter = JitterModel::None;
      } else if (value == "uniform") {
        exp.jitter = JitterModel::Uniform;
      } else if (value == "two_point") {
        exp.jitter = JitterModel::TwoPoint;
      } else {
        fail(key, "expected none, uniform, or two_point");
      }
    } else if (tdma && key == "timing.jitter_bound") {
      exp.jitter_bound = parse_duration_for(key, value);
    } else if (tdma && key == "clock.setting") {
      exp.clock_setting = parse_int(key, value);
    } else if (tdma && key == "clock.tick_ratio") {
      try {
        exp.tick_ratio = parse_rational(value);
      } catch (const std::exception& e) {
        fail(key, e.what());
      }
    } else if (tdma && key == "controller.mode") {
      if (value == "jit") {
        exp.mode = TrafficMode::Jit;
      } else if (value == "baseline") {
        exp.mode = TrafficMode::Baseline;
      } else {
        fail(key, "expected jit or baseline");
      }
    } else if (tdma && key == "controller.slack_target") {
      exp.slack_target = parse_duration_for(key, value);
    } else if (tdma && key == "controller.alpha") {
      try {
        exp.alpha = parse_rational(value);
      } catch (const std::exception& e) {
        fail(key, e.what());
      }
    } else if (tdma && key == "controller.fifo_capacity") {
      exp.fifo_capacity = parse_int(key, value);
    } else if (tdma && key == "controller.client_phase") {
      exp.client_phase = parse_duration_for(key, value);
    } else if (!tdma && key == "csma.contenders") {
      csma.contenders = parse_int(key, value);
    } else if (!tdma && key == "csma.slot_time") {
      csma.slot_time = parse_duration_for(key, value);
    } else if (!tdma && key == "csma.contention_window") {
      csma.contention_window = parse_int(key, value);
    } else if (!tdma && key == "csma.turnaround") {
      csma.turnaround = parse_duration_for(key, value);
    } else if (!tdma && key == "csma.airtime") {
      csma.airtime = parse_duration_for(key, value);
    } else if (!tdma && key == "csma.mode") {
      if (value == "pull") {
        csma.mode = CsmaMode::Pull;
      } else if (value == "push") {
        csma.mode = CsmaMode::Push;
      } else {
        fail(key, "expected pull or push");
      }
    } else if (!tdma && key == "csma.server_preset") {
      csma.server_preset = parse_bool(key, value);
    } else {
      fail(key, tdma ? "unknown key for a tdma scenario" : "unknown key for a csma scenario");
    }
  }
  return scenario;
}

}  // namespace jitnet
