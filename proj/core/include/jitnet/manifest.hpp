#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jitnet/csma.hpp"
#include "jitnet/tdma.hpp"

namespace jitnet {

// Flat sectioned key=value scenario file. Lines are either blank, full-line
// '#' comments, '[section]' headers, or 'key = value'. Keys are addressed as
// "section.key"; duplicates and keys outside any section are rejected.
struct Manifest {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string raw;  // original text, preserved verbatim for output dirs
  std::filesystem::path source;

  const std::string* find(std::string_view key) const;
};

Manifest parse_manifest(std::string_view text);
Manifest load_manifest(const std::filesystem::path& path);

// "150us", "9.6ms", "4800ns", "1s" -> ticks. The suffix is mandatory and the
// value must come out to a whole number of ticks.
Tick parse_duration(std::string_view text);

enum class ScenarioKind { Tdma, Csma };

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Tdma;
  std::string name;
  ExperimentConfig tdma;
  CsmaConfig csma;
};

// Applies every entry onto the defaults; unknown keys, keys that do not
// apply to the declared kind, and malformed values all throw
// std::invalid_argument naming the offending key.
ScenarioConfig scenario_from_manifest(const Manifest& manifest);

}  // namespace jitnet
