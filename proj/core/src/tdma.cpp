#include "jitnet/tdma.hpp"

#include <deque>
#include <queue>
#include <stdexcept>
#include <utility>

#include "jitnet/rng.hpp"

namespace jitnet {

namespace {

// Same-instant ordering: pulls and arrivals settle before a slot boundary
// opens, so a request arriving exactly at its slot still makes it (slack 0
// transmits); slot boundaries come last.
enum class EventKind : int {
  Pull = 0,
  Arrival = 1,
  ResponseReady = 2,
  ClientSlot = 3,
  ServerSlot = 4,
};

struct Event {
  Tick time = 0;
  int order = 0;
  std::uint64_t seq = 0;
  std::int64_t payload = 0;  // packet index, pool index, or frame index
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.order != b.order) return a.order > b.order;
    return a.seq > b.seq;
  }
};

struct PendingRequest {
  std::int64_t packet = 0;
  std::int64_t aimed_frame = 0;
  Tick pull_local = 0;
  Tick pull_reference = 0;
  Tick correction = 0;
  Tick arrival = 0;
  Tick d_c = 0;
};

struct PendingResponse {
  Tick ready = 0;
  ExchangeTrace partial;  // filled through t6
};

void validate(const ExperimentConfig& cfg) {
  if (cfg.num_slots <= 0) throw std::invalid_argument("num_slots must be positive");
  if (cfg.slot <= 0) throw std::invalid_argument("slot duration must be positive");
  if (cfg.num_frames <= 0) throw std::invalid_argument("num_frames must be positive");
  if (cfg.fifo_capacity < 1) throw std::invalid_argument("fifo_capacity must be at least 1");
  if (cfg.propagation < 0) throw std::invalid_argument("propagation must be non-negative");
  if (cfg.client_delay < 0) throw std::invalid_argument("client_delay must be non-negative");
  if (cfg.jitter_bound < 0) throw std::invalid_argument("jitter_bound must be non-negative");
  if (cfg.slack_target < 0) throw std::invalid_argument("slack_target must be non-negative");
  if (cfg.server_delay < 0 || cfg.server_delay >= cfg.frame()) {
    throw std::invalid_argument("server_delay must lie in [0, frame)");
  }
  if (cfg.client_phase && (*cfg.client_phase < 0 || *cfg.client_phase >= cfg.frame())) {
    throw std::invalid_argument("client_phase must lie in [0, frame)");
  }
}

}  // namespace

TdmaResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);

  std::vector<SlotPair> pairs = cfg.allocation;
  if (pairs.empty()) {
    pairs.push_back(SlotPair{0, response_offset(cfg.server_delay, cfg.slot, cfg.num_slots)});
  }
  validate_allocation(pairs, cfg.num_slots, {});

  const VirtualClock clock = cfg.tick_ratio ? VirtualClock{*cfg.tick_ratio, 0}
                                            : clock_for_setting(cfg.clock_setting);
  const Tick frame = cfg.frame();
  const SlotPair measured = pairs[0];
  const Tick client_slot_offset = static_cast<Tick>(measured.client) * cfg.slot;
  const Tick server_slot_offset = static_cast<Tick>(measured.server) * cfg.slot;

  std::mt19937_64 jitter_eng = make_stream(cfg.seed, 0);
  std::mt19937_64 phase_eng = make_stream(cfg.seed, 1);
  auto draw_jitter = [&]() -> Tick {
    switch (cfg.jitter) {
      case JitterModel::None:
        return 0;
      case JitterModel::Uniform:
        return uniform_tick(jitter_eng, 0, cfg.jitter_bound);
      case JitterModel::TwoPoint:
        return uniform_tick(jitter_eng, 0, 1) * cfg.jitter_bound;
    }
    throw std::logic_error("unhandled jitter model");
  };

  std::priority_queue<Event, std::vector<Event>, EventAfter> heap;
  std::uint64_t seq = 0;
  auto push = [&](Tick time, EventKind kind, std::int64_t payload) {
    heap.push(Event{time, static_cast<int>(kind), seq++, payload});
  };

  const bool jit = cfg.mode == TrafficMode::Jit;
  std::optional<SyncController> controller;
  std::int64_t next_aimed_frame = 1;
  Tick baseline_next_local = 0;

  if (jit) {
    // Anchor the first pull so its request reaches the MAC exactly
    // slack_target before the frame-1 client slot (before jitter).
    const Tick first_pull_reference =
        frame + client_slot_offset - cfg.slack_target - cfg.client_delay;
    controller.emplace(SyncConfig{cfg.alpha, cfg.slack_target, frame},
                       clock.to_local(first_pull_reference));
    push(clock.to_reference(controller->scheduled_pull()), EventKind::Pull, 0);
  } else {
    const Tick phase = cfg.client_phase ? *cfg.client_phase : uniform_tick(phase_eng, 0, frame - 1);
    baseline_next_local = clock.to_local(phase);
    push(clock.to_reference(baseline_next_local), EventKind::Pull, 0);
  }

  TdmaResult result;
  std::vector<PendingRequest> in_flight;
  std::vector<PendingResponse> response_pool;
  std::deque<PendingRequest> fifo;
  std::deque<PendingResponse> responses;
  std::int64_t responses_in_preparation = 0;

  push(client_slot_offset, EventKind::ClientSlot, 0);
  push(server_slot_offset, EventKind::ServerSlot, 0);

  while (!heap.empty() && !result.overflow_terminated) {
    const Event ev = heap.top();
    heap.pop();

    switch (static_cast<EventKind>(ev.order)) {
      case EventKind::Pull: {
        PendingRequest req;
        req.packet = ev.payload;
        req.pull_reference = ev.time;
        req.d_c = cfg.client_delay + draw_jitter();
        req.arrival = ev.time + req.d_c;
        if (jit) {
          req.aimed_frame = next_aimed_frame;
          req.pull_local = controller->scheduled_pull();
          req.correction = controller->correction();
        } else {
          req.pull_local = baseline_next_local;
          // Fixed cadence: the next pull is one frame later on the client's
          // own clock, drift and all.
          baseline_next_local += frame;
          const Tick next_reference = clock.to_reference(baseline_next_local);
          if (next_reference < frame * cfg.num_frames) {
            push(next_reference, EventKind::Pull, ev.payload + 1);
          }
        }
        in_flight.push_back(req);
        push(req.arrival, EventKind::Arrival, req.packet);
        break;
      }

      case EventKind::Arrival: {
        const PendingRequest& req = in_flight[static_cast<std::size_t>(ev.payload)];
        if (std::ssize(fifo) >= cfg.fifo_capacity) {
          result.overflow_terminated = true;
          break;
        }
        fifo.push_back(req);
        if (jit) {
          const Tick aimed_slot_start = req.aimed_frame * frame + client_slot_offset;
          const Tick slack = compute_slack(aimed_slot_start, req.arrival);
          const bool missed = slack < 0;
          if (missed) ++result.missed_slots;
          result.telemetry.push_back(ControllerSample{
              req.packet, req.aimed_frame, req.pull_local, req.pull_reference,
              req.pull_local - req.pull_reference, req.d_c, slack, req.correction, missed});
          // A missed request occupies the next frame's slot, so the following
          // pull skips a frame; the queue never builds a standing backlog.
          const int frames_ahead = missed ? 2 : 1;
          controller->apply_feedback(req.packet, slack, frames_ahead);
          next_aimed_frame = req.aimed_frame + frames_ahead;
          if (next_aimed_frame < cfg.num_frames) {
            Tick next_reference = clock.to_reference(controller->scheduled_pull());
            if (next_reference <= req.arrival) {
              next_reference = req.arrival + 1;
              ++result.late_pulls;
            }
            push(next_reference, EventKind::Pull, req.packet + 1);
          }
        }
        break;
      }

      case EventKind::ClientSlot: {
        const std::int64_t f = ev.payload;
        ++result.frames_run;
        const int occupancy = static_cast<int>(fifo.size());
        result.occupancy.push_back(OccupancyRow{f, measured.client, occupancy, occupancy == 0});
        if (occupancy == 0) {
          ++result.client_underflows;
        } else {
          const PendingRequest req = fifo.front();
          fifo.pop_front();
          ExchangeTrace tr;
          tr.frame = f;
          tr.pair = 0;
          tr.t[0] = req.pull_reference;
          tr.t[1] = req.arrival;
          tr.t[2] = ev.time;
          tr.t[3] = ev.time + cfg.slot;
          tr.t[4] = tr.t[2] + cfg.propagation;
          tr.t[5] = tr.t[3] + cfg.propagation;
          tr.t[6] = tr.t[5] + cfg.server_delay;
          tr.d_c = req.d_c;
          tr.w_c = tr.t[2] - req.arrival;
          tr.t_phy_c = cfg.slot;
          tr.d_s = cfg.server_delay;
          response_pool.push_back(PendingResponse{tr.t[6], tr});
          ++responses_in_preparation;
          push(tr.t[6], EventKind::ResponseReady,
               static_cast<std::int64_t>(response_pool.size()) - 1);
        }
        if (f + 1 < cfg.num_frames) {
          push(ev.time + frame, EventKind::ClientSlot, f + 1);
        }
        break;
      }

      case EventKind::ResponseReady: {
        responses.push_back(std::move(response_pool[static_cast<std::size_t>(ev.payload)]));
        --responses_in_preparation;
        break;
      }

      case EventKind::ServerSlot: {
        const std::int64_t f = ev.payload;
        std::size_t ready = 0;
        while (ready < responses.size() && responses[ready].ready <= ev.time) ++ready;
        if (ready == 0) {
          result.occupancy.push_back(OccupancyRow{f, measured.server, 0, true});
          if (responses_in_preparation > 0) ++result.server_skips;
        } else {
          // Only the freshest ready response goes out; older ones are stale.
          PendingResponse resp = std::move(responses[ready - 1]);
          result.stale_responses += static_cast<std::int64_t>(ready) - 1;
          responses.erase(responses.begin(),
                          responses.begin() + static_cast<std::ptrdiff_t>(ready));
          result.occupancy.push_back(
              OccupancyRow{f, measured.server, static_cast<int>(ready), false});
          ExchangeTrace tr = resp.partial;
          tr.t[7] = ev.time;
          tr.t[8] = ev.time + cfg.slot;
          tr.t[9] = tr.t[7] + cfg.propagation;
          tr.t[10] = tr.t[8] + cfg.propagation;
          tr.w_s = tr.t[7] - tr.t[6];
          tr.t_phy_s = cfg.slot;
          tr.rtt = tr.t[10] - tr.t[0];
          result.traces.push_back(tr);
        }
        if (f + 1 < cfg.num_frames) {
          push(ev.time + frame, EventKind::ServerSlot, f + 1);
        }
        break;
      }
    }
  }

  return result;
}

Tick recompose_rtt(const ExchangeTrace& tr) {
  const Tick propagation = tr.t[4] - tr.t[2];
  return tr.d_c + tr.w_c + tr.t_phy_c + tr.d_s + tr.w_s + tr.t_phy_s + 2 * propagation;
}

std::vector<Tick> information_age_series(std::span<const ExchangeTrace> traces, int pair) {
  std::vector<Tick> ages;
  ages.reserve(traces.size());
  for (const ExchangeTrace& tr : traces) {
    if (tr.pair == pair) ages.push_back(tr.t[5] - tr.t[0]);
  }
  return ages;
}

}  // namespace jitnet
