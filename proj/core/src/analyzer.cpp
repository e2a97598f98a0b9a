#include "jitnet/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jitnet {

SummaryStats summarize(std::span<const Tick> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty series");
  SummaryStats stats;
  stats.count = values.size();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  stats.min = *lo;
  stats.max = *hi;
  long double total = 0.0L;
  for (Tick v : values) total += static_cast<long double>(v);
  stats.mean = static_cast<double>(total / static_cast<long double>(values.size()));
  stats.p99 = percentile(values, 99.0);
  return stats;
}

Tick percentile(std::span<const Tick> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile: empty series");
  if (p <= 0.0 || p > 100.0) throw std::invalid_argument("percentile: p must lie in (0, 100]");
  std::vector<Tick> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(sorted.size())));
  return sorted[std::max<std::size_t>(rank, 1) - 1];
}

std::optional<SteadyStateWindow> detect_convergence(std::span<const Tick> series,
                                                    const ConvergenceConfig& config) {
  const std::size_t w = config.window;
  if (w < 2) throw std::invalid_argument("convergence window must be >= 2");
  if (series.size() < w) return std::nullopt;

  std::vector<long double> prefix(series.size() + 1, 0.0L);
  for (std::size_t i = 0; i < series.size(); ++i) {
    prefix[i + 1] = prefix[i] + static_cast<long double>(series[i]);
  }
  for (std::size_t start = 0; start + w <= series.size(); ++start) {
    const long double mean =
        (prefix[start + w] - prefix[start]) / static_cast<long double>(w);
    bool settled = true;
    for (std::size_t i = start; i < start + w; ++i) {
      if (std::fabs(static_cast<long double>(series[i]) - mean) >
          static_cast<long double>(config.tolerance)) {
        settled = false;
        break;
      }
    }
    if (settled) return SteadyStateWindow{start, static_cast<double>(mean)};
  }
  return std::nullopt;
}

Tick verify_recurrence(std::span<const ControllerSample> telemetry, const SyncConfig& config) {
  Tick worst = 0;
  for (std::size_t i = 1; i < telemetry.size(); ++i) {
    const ControllerSample& prev = telemetry[i - 1];
    const ControllerSample& cur = telemetry[i];

    const Tick expected_correction = ewma_correction(config, prev.correction, prev.slack);
    worst = std::max(worst, std::abs(cur.correction - expected_correction));

    const Tick offset_change = cur.offset - prev.offset;
    const Tick delay_change = cur.d_c - prev.d_c;
    const Tick expected_slack = prev.slack + offset_change - cur.correction - delay_change;
    worst = std::max(worst, std::abs(cur.slack - expected_slack));
  }
  return worst;
}

namespace {

void push_row(std::vector<FigureRow>& rows, double x, const char* series, Tick y) {
  rows.push_back(FigureRow{x, series, static_cast<double>(y)});
}

}  // namespace

std::vector<FigureRow> figure_rows(FigureKind kind, const TdmaResult& result,
                                   std::int64_t stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  std::vector<FigureRow> rows;

  switch (kind) {
    case FigureKind::RttComponents: {
      for (std::size_t i = 0; i < result.traces.size();
           i += static_cast<std::size_t>(stride)) {
        const ExchangeTrace& tr = result.traces[i];
        const double x = static_cast<double>(tr.frame);
        push_row(rows, x, "d_c", tr.d_c);
        push_row(rows, x, "w_c", tr.w_c);
        push_row(rows, x, "t_phy_c", tr.t_phy_c);
        push_row(rows, x, "d_s", tr.d_s);
        push_row(rows, x, "w_s", tr.w_s);
        push_row(rows, x, "t_phy_s", tr.t_phy_s);
        push_row(rows, x, "rtt", tr.rtt);
      }
      break;
    }
    case FigureKind::SlackSeries: {
      if (!result.telemetry.empty()) {
        for (std::size_t i = 0; i < result.telemetry.size();
             i += static_cast<std::size_t>(stride)) {
          const ControllerSample& s = result.telemetry[i];
          push_row(rows, static_cast<double>(s.frame), "slack", s.slack);
        }
      } else {
        for (std::size_t i = 0; i < result.traces.size();
             i += static_cast<std::size_t>(stride)) {
          const ExchangeTrace& tr = result.traces[i];
          push_row(rows, static_cast<double>(tr.frame), "w_c", tr.w_c);
        }
      }
      break;
    }
    case FigureKind::CorrectionSeries: {
      for (std::size_t i = 0; i < result.telemetry.size();
           i += static_cast<std::size_t>(stride)) {
        const ControllerSample& s = result.telemetry[i];
        push_row(rows, static_cast<double>(s.frame), "correction", s.correction);
      }
      break;
    }
    case FigureKind::AgeSeries: {
      for (std::size_t i = 0; i < result.traces.size();
           i += static_cast<std::size_t>(stride)) {
        const ExchangeTrace& tr = result.traces[i];
        push_row(rows, static_cast<double>(tr.frame), "age", tr.t[5] - tr.t[0]);
      }
      break;
    }
  }
  return rows;
}

}  // namespace jitnet
