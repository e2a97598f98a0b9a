#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jitnet/sync.hpp"
#include "jitnet/tdma.hpp"
#include "jitnet/time.hpp"

namespace jitnet {

struct SummaryStats {
  std::size_t count = 0;
  Tick min = 0;
  Tick max = 0;
  double mean = 0.0;
  Tick p99 = 0;
};

SummaryStats summarize(std::span<const Tick> values);

// Nearest-rank percentile, p in (0, 100]. Requires a non-empty series.
Tick percentile(std::span<const Tick> values, double p);

struct ConvergenceConfig {
  std::size_t window = 200;
  Tick tolerance = 2 * kMicrosecond;
};

struct SteadyStateWindow {
  std::size_t start = 0;  // first index of the qualifying window
  double mean = 0.0;
};

// Earliest window of `window` consecutive samples that all stay within
// tolerance of the window mean; nullopt when the series never settles.
std::optional<SteadyStateWindow> detect_convergence(std::span<const Tick> series,
                                                    const ConvergenceConfig& config = {});

// Replays the controller arithmetic over recorded telemetry and returns the
// largest deviation in ticks. Exact runs return 0: the correction must
// reproduce the smoothing recurrence, and consecutive slacks must differ by
// exactly (offset change) - correction - (request delay change).
Tick verify_recurrence(std::span<const ControllerSample> telemetry, const SyncConfig& config);

enum class FigureKind {
  RttComponents,     // stacked delay decomposition per completed exchange
  SlackSeries,       // slack (or client wait for fixed-cadence runs) vs frame
  CorrectionSeries,  // controller smoothing state vs frame
  AgeSeries,         // request age at server receipt vs frame
};

struct FigureRow {
  double x = 0.0;
  std::string series;
  double y = 0.0;
};

// Downsampled plot-ready rows; stride 1 keeps every point.
std::vector<FigureRow> figure_rows(FigureKind kind, const TdmaResult& result,
                                   std::int64_t stride = 100);

}  // namespace jitnet
