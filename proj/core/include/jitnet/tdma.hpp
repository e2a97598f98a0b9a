#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jitnet/allocator.hpp"
#include "jitnet/clock.hpp"
#include "jitnet/sync.hpp"
#include "jitnet/time.hpp"

namespace jitnet {

enum class TrafficMode {
  Jit,       // pull cadence steered by slack feedback
  Baseline,  // fixed pull period on the client's own clock
};

enum class JitterModel {
  None,
  Uniform,   // uniform integer ticks in [0, bound]
  TwoPoint,  // 0 or bound with equal probability
};

struct ExperimentConfig {
  int num_slots = 64;
  Tick slot = 150 * kMicrosecond;
  Tick propagation = 0;

  Tick client_delay = 30 * kMicrosecond;  // fixed pull-to-MAC processing time
  Tick server_delay = 30 * kMicrosecond;  // request-to-response processing time
  JitterModel jitter = JitterModel::Uniform;
  Tick jitter_bound = 30 * kMicrosecond;

  TrafficMode mode = TrafficMode::Jit;
  int clock_setting = 1;
  std::optional<Rational> tick_ratio;  // overrides the setting's client clock drift

  Rational alpha{1, 2};
  Tick slack_target = 30 * kMicrosecond;
  int fifo_capacity = 64;

  std::int64_t num_frames = 10'000;
  std::uint64_t seed = 1;

  // Explicit slot allocation; pair 0 is simulated in full, the remaining
  // pairs only hold their slots. Empty = single pair derived from
  // server_delay.
  std::vector<SlotPair> allocation;

  // Baseline pull phase within the first frame, reference clock. Unset =
  // drawn uniformly from [0, frame) using the run seed.
  std::optional<Tick> client_phase;

  Tick frame() const { return slot * static_cast<Tick>(num_slots); }
};

// Reference-clock timestamps of one completed exchange:
//   t0 pull issued            t1 request reaches client MAC
//   t2/t3 client tx start/end t4/t5 server rx start/end
//   t6 response ready         t7/t8 server tx start/end
//   t9/t10 client rx start/end
struct ExchangeTrace {
  std::int64_t frame = 0;  // frame whose client slot carried the request
  int pair = 0;
  std::array<Tick, 11> t{};
  Tick d_c = 0;
  Tick w_c = 0;
  Tick t_phy_c = 0;
  Tick d_s = 0;
  Tick w_s = 0;
  Tick t_phy_s = 0;
  Tick rtt = 0;
};

struct OccupancyRow {
  std::int64_t frame = 0;
  int slot = 0;
  int occupancy = 0;       // queue depth when the slot opens
  bool underflow = false;  // slot owned by the pair but nothing ready
};

// Controller state recorded at each request arrival (pull-steered runs only).
struct ControllerSample {
  std::int64_t packet = 0;
  std::int64_t frame = 0;  // frame whose client slot this pull aimed at
  Tick pull_local = 0;
  Tick pull_reference = 0;
  Tick offset = 0;  // pull_local - pull_reference
  Tick d_c = 0;     // realized request delay including jitter
  Tick slack = 0;
  Tick correction = 0;  // smoothing state that placed this pull
  bool missed = false;  // slack < 0: the aimed-at slot had already opened
};

struct TdmaResult {
  std::vector<ExchangeTrace> traces;
  std::vector<OccupancyRow> occupancy;
  std::vector<ControllerSample> telemetry;
  std::int64_t frames_run = 0;
  std::int64_t client_underflows = 0;
  std::int64_t server_skips = 0;       // server slots with a response pending but not ready
  std::int64_t stale_responses = 0;    // responses superseded before transmission
  std::int64_t missed_slots = 0;       // requests that arrived after their aimed-at slot
  std::int64_t late_pulls = 0;         // pulls rescheduled because feedback arrived too late
  bool overflow_terminated = false;    // client FIFO overflowed; outputs are partial
};

TdmaResult run_experiment(const ExperimentConfig& config);

// Upper bound on w_c + w_s: each direction can wait just short of a full
// frame for its slot.
constexpr Tick worst_case_wait(Tick frame) { return 2 * frame; }

// Sum of the decomposition columns plus both propagation legs; equals both
// the rtt column and t10 - t0 on every valid trace row.
Tick recompose_rtt(const ExchangeTrace& trace);

// Age of the request data at the instant the server finished receiving it
// (t5 - t0), one value per completed exchange of `pair`.
std::vector<Tick> information_age_series(std::span<const ExchangeTrace> traces, int pair = 0);

}  // namespace jitnet
