#include "jitnet/csma.hpp"

#include <stdexcept>

#include "jitnet/rng.hpp"

namespace jitnet {

CsmaResult run_csma(const CsmaConfig& cfg) {
  if (cfg.contenders < 0) throw std::invalid_argument("contenders must be non-negative");
  if (cfg.slot_time <= 0) throw std::invalid_argument("slot_time must be positive");
  if (cfg.contention_window < 1) throw std::invalid_argument("contention_window must be >= 1");
  if (cfg.turnaround < 0) throw std::invalid_argument("turnaround must be non-negative");
  if (cfg.airtime <= 0) throw std::invalid_argument("airtime must be positive");
  if (cfg.num_packets < 1) throw std::invalid_argument("num_packets must be >= 1");

  std::mt19937_64 eng = make_stream(cfg.seed, 2);
  auto draw = [&]() -> int {
    return static_cast<int>(uniform_tick(eng, 0, cfg.contention_window - 1));
  };

  // Transmissions occupy whole backoff slots; the countdown threshold is the
  // number of idle slots the turnaround spans.
  const Tick busy = ((cfg.airtime + cfg.slot_time - 1) / cfg.slot_time) * cfg.slot_time;
  const int threshold =
      static_cast<int>((cfg.turnaround + cfg.slot_time - 1) / cfg.slot_time);

  std::vector<int> contender(static_cast<std::size_t>(cfg.contenders));
  for (int& counter : contender) counter = draw();

  CsmaResult result;
  result.waits.reserve(static_cast<std::size_t>(cfg.num_packets));
  Tick now = 0;  // always on a slot boundary

  for (int packet = 0; packet < cfg.num_packets; ++packet) {
    int server = -1;  // -1: counter not drawn yet
    bool producing = false;
    Tick ready = 0;

    if (cfg.mode == CsmaMode::Pull) {
      server = cfg.server_preset ? threshold : draw();
      if (server <= threshold) {
        // Already at or past the pull point: start producing immediately.
        producing = true;
        ready = now + cfg.turnaround;
      }
    } else {
      producing = true;
      ready = now + cfg.turnaround;
    }

    for (;;) {
      if (cfg.mode == CsmaMode::Push && server < 0 && now >= ready) {
        server = draw();
      }
      if (server == 0 && producing && now >= ready) {
        result.waits.push_back(CsmaWait{packet, ready, now, now - ready});
        now += busy;
        break;
      }
      int winner = -1;
      for (int i = 0; i < cfg.contenders; ++i) {
        if (contender[static_cast<std::size_t>(i)] == 0) {
          winner = i;
          break;
        }
      }
      if (winner >= 0) {
        now += busy;
        contender[static_cast<std::size_t>(winner)] = draw();
        continue;
      }
      for (int& counter : contender) {
        if (counter > 0) --counter;
      }
      if (server > 0) {
        --server;
        if (cfg.mode == CsmaMode::Pull && !producing && server == threshold) {
          // The countdown just reached the pull point: the remaining slots
          // cover the turnaround, so the response lands as the counter zeroes.
          producing = true;
          ready = now + cfg.slot_time + cfg.turnaround;
        }
      }
      now += cfg.slot_time;
    }
  }
  return result;
}

}  // namespace jitnet
