#pragma once

#include <cstdint>
#include <vector>

#include "jitnet/time.hpp"

namespace jitnet {

enum class CsmaMode {
  Pull,  // backoff runs while the response is being produced
  Push,  // backoff starts only once the response is ready
};

// Contention-based variant: one server answering a request stream while
// `contenders` saturated nodes share the medium. Slotted backoff with a
// fixed contention window; counters freeze while the medium is busy; no
// collisions are modeled (the lowest node id wins a tie, the server being
// the lowest).
struct CsmaConfig {
  int contenders = 5;
  Tick slot_time = 9 * kMicrosecond;
  int contention_window = 16;  // counters drawn uniformly from [0, cw)
  Tick turnaround = 30 * kMicrosecond;  // time to produce a response
  Tick airtime = 150 * kMicrosecond;    // medium occupancy per transmission
  CsmaMode mode = CsmaMode::Pull;
  // Pull mode only: start each cycle's counter exactly at the pull threshold
  // instead of drawing it, so the countdown and the turnaround line up.
  bool server_preset = false;
  std::uint64_t seed = 1;
  int num_packets = 1000;
};

struct CsmaWait {
  int packet = 0;
  Tick ready = 0;     // response fully produced and ready to send
  Tick tx_start = 0;  // slot boundary at which it actually left
  Tick wait = 0;      // tx_start - ready
};

struct CsmaResult {
  std::vector<CsmaWait> waits;
};

CsmaResult run_csma(const CsmaConfig& config);

}  // namespace jitnet
