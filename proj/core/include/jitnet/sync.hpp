#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>

#include "jitnet/time.hpp"

namespace jitnet {

struct SyncConfig {
  Rational alpha{1, 2};
  Tick slack_target = 30 * kMicrosecond;
  Tick frame = 64 * 150 * kMicrosecond;
};

// Spread (max - min) of observed request delays; the width the slack target
// must cover so that early arrivals still precede their slot. Requires at
// least two samples.
Tick estimate_slack_target(std::span<const Tick> delay_samples);

// Slack of a request that reached the MAC at `arrival` for the slot opening
// at `slot_start`. Negative means the slot was missed.
constexpr Tick compute_slack(Tick slot_start, Tick arrival) { return slot_start - arrival; }

// One smoothing step of the pull-interval correction:
//   next = (1 - alpha) * previous + alpha * (slack - slack_target),
// evaluated in integer ticks, rounding half away from zero.
Tick ewma_correction(const SyncConfig& config, Tick previous, Tick slack);

// Client-side pull scheduler. Pull i+1 is placed one frame (or, after a
// missed slot, `frames_ahead` frames) past pull i on the local clock, plus
// the smoothed correction driving measured slack toward the target.
class SyncController {
 public:
  SyncController(SyncConfig config, Tick first_pull_local);

  Tick scheduled_pull() const { return pull_local_; }
  std::int64_t packet_index() const { return index_; }
  Tick correction() const { return correction_; }

  // Consumes the measured slack of packet `index` (feedback must arrive in
  // order) and schedules the next pull.
  void apply_feedback(std::int64_t index, Tick slack, int frames_ahead = 1);

 private:
  SyncConfig config_;
  Tick pull_local_;
  Tick correction_ = 0;
  std::int64_t index_ = 0;
};

// Poles of the closed-loop slack dynamics, the roots of
//   z^2 - 2(1 - alpha) z + (1 - alpha) = 0.
// Complex for any alpha in (0, 1); magnitude sqrt(1 - alpha).
std::pair<std::complex<double>, std::complex<double>> controller_poles(const Rational& alpha);

// Fixed point the slack settles at when the local clock gains `offset_step`
// per pull interval.
constexpr Tick predict_converged_slack(Tick slack_target, Tick offset_step) {
  return slack_target + offset_step;
}

}  // namespace jitnet
