#pragma once

#include <span>
#include <vector>

#include "jitnet/time.hpp"

namespace jitnet {

// One duplex exchange: the slot the client transmits in and the slot the
// server answers in, indices in [0, num_slots).
struct SlotPair {
  int client = 0;
  int server = 0;

  friend bool operator==(const SlotPair&, const SlotPair&) = default;
};

// Slots from `from` to `to` walking forward around the frame ring.
constexpr long long ring_distance(int from, int to, int num_slots) {
  const int d = (to - from) % num_slots;
  return d < 0 ? d + num_slots : d;
}

// Smallest usable client-to-server slot distance for a reply that takes
// `server_delay` to produce: ceil(server_delay / slot) + 1, wrapped modulo
// num_slots. Requires 0 <= server_delay < num_slots * slot.
int response_offset(Tick server_delay, Tick slot, int num_slots);

// Visit order of `start` under repeated +offset steps modulo num_slots,
// ending just before the walk returns to `start`.
std::vector<int> slot_orbit(int start, int offset, int num_slots);

struct PackingFeasibility {
  bool feasible = false;
  int period = 0;  // orbit length num_slots / gcd(num_slots, offset)
};

// A full pairing of all slots at uniform distance `offset` exists exactly
// when the orbit period is even.
PackingFeasibility packing_feasibility(int num_slots, int offset);

enum class PackingPhase {
  ClientFirst,  // pair consecutive orbit visits as (client, server)
  ServerFirst,  // shift by one: the orbit's first visit becomes a server slot
};

// Pairs all num_slots slots into num_slots/2 exchanges at uniform distance
// `offset`. Throws std::domain_error when the orbit period is odd.
std::vector<SlotPair> construct_full_packing(int num_slots, int offset,
                                             PackingPhase phase = PackingPhase::ClientFirst);

// Places num_pairs exchanges at uniform distance `offset` with client slots
// spread num_slots/num_pairs apart. Throws std::domain_error if any two
// assigned slots collide.
std::vector<SlotPair> evenly_spaced_assignment(int num_slots, int offset, int num_pairs);

struct AllocationRequest {
  int num_slots = 0;
  std::vector<int> offsets;  // minimum distance per requested pair
};

struct AllocationResult {
  std::vector<SlotPair> pairs;  // pairs[i] satisfies offsets[i]
  long long total_distance = 0;
  bool exact = false;  // false when the greedy fallback produced it
};

// Minimizes total ring distance subject to every slot being used at most
// once and pair i spanning at least offsets[i]. Searches exhaustively while
// the assignment-space estimate stays within work_bound (the result is then
// the lexicographically first optimum), otherwise falls back to a greedy
// heuristic: pairs in descending offset order, each taking the shortest
// feasible span. Throws std::domain_error when no feasible assignment exists.
AllocationResult solve_allocation(const AllocationRequest& request,
                                  long long work_bound = 10'000'000);

// Rejects out-of-range slots, any slot used twice (client and server slots
// must be injective across all pairs), and spans shorter than the pair's
// offset. Throws std::invalid_argument with a diagnostic.
void validate_allocation(std::span<const SlotPair> pairs, int num_slots,
                         std::span<const int> offsets);

}  // namespace jitnet
