#include "jitnet/allocator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jitnet {

namespace {

void check_geometry(int num_slots, int offset) {
  if (num_slots <= 0) throw std::invalid_argument("num_slots must be positive");
  if (offset < 0 || offset >= num_slots) {
    throw std::invalid_argument("offset must lie in [0, num_slots)");
  }
}

struct SearchState {
  int num_slots = 0;
  std::span<const int> offsets;
  std::vector<long long> tail_bound;  // sum of minimum spans for pairs >= i
  std::vector<char> used;
  std::vector<SlotPair> current;
  std::vector<SlotPair> best;
  long long current_total = 0;
  long long best_total = 0;
  bool found = false;
};

void search(SearchState& s, std::size_t pair_index) {
  if (pair_index == s.offsets.size()) {
    if (!s.found || s.current_total < s.best_total) {
      s.found = true;
      s.best_total = s.current_total;
      s.best = s.current;
    }
    return;
  }
  if (s.found && s.current_total + s.tail_bound[pair_index] >= s.best_total) return;

  const long long min_span = std::max(s.offsets[pair_index], 1);
  for (int client = 0; client < s.num_slots; ++client) {
    if (s.used[client]) continue;
    s.used[client] = 1;
    for (int server = 0; server < s.num_slots; ++server) {
      if (s.used[server]) continue;
      const long long span = ring_distance(client, server, s.num_slots);
      if (span < min_span) continue;
      if (s.found && s.current_total + span + s.tail_bound[pair_index + 1] >= s.best_total) {
        continue;
      }
      s.used[server] = 1;
      s.current[pair_index] = SlotPair{client, server};
      s.current_total += span;
      search(s, pair_index + 1);
      s.current_total -= span;
      s.used[server] = 0;
    }
    s.used[client] = 0;
  }
}

AllocationResult solve_greedy(const AllocationRequest& request) {
  const int n = request.num_slots;
  std::vector<std::size_t> order(request.offsets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return request.offsets[a] > request.offsets[b];
  });

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  AllocationResult result;
  result.pairs.resize(request.offsets.size());
  for (std::size_t idx : order) {
    const long long min_span = std::max(request.offsets[idx], 1);
    bool placed = false;
    SlotPair pick{};
    long long pick_span = 0;
    for (long long span = min_span; span < n && !placed; ++span) {
      for (int client = 0; client < n; ++client) {
        const int server = static_cast<int>((client + span) % n);
        if (used[client] || used[server]) continue;
        pick = SlotPair{client, server};
        pick_span = span;
        placed = true;
        break;
      }
    }
    if (!placed) throw std::domain_error("no feasible slot assignment");
    used[pick.client] = 1;
    used[pick.server] = 1;
    result.pairs[idx] = pick;
    result.total_distance += pick_span;
  }
  result.exact = false;
  return result;
}

}  // namespace

int response_offset(Tick server_delay, Tick slot, int num_slots) {
  if (num_slots <= 0) throw std::invalid_argument("num_slots must be positive");
  if (slot <= 0) throw std::invalid_argument("slot duration must be positive");
  if (server_delay < 0 || server_delay >= slot * num_slots) {
    throw std::invalid_argument("server delay must lie in [0, frame)");
  }
  const Tick cells = (server_delay + slot - 1) / slot;
  return static_cast<int>((cells + 1) % num_slots);
}

std::vector<int> slot_orbit(int start, int offset, int num_slots) {
  check_geometry(num_slots, offset);
  if (start < 0 || start >= num_slots) {
    throw std::invalid_argument("start slot out of range");
  }
  std::vector<int> orbit;
  int at = start;
  do {
    orbit.push_back(at);
    at = (at + offset) % num_slots;
  } while (at != start);
  return orbit;
}

PackingFeasibility packing_feasibility(int num_slots, int offset) {
  check_geometry(num_slots, offset);
  const int period = num_slots / std::gcd(num_slots, offset == 0 ? num_slots : offset);
  return PackingFeasibility{period % 2 == 0, period};
}

std::vector<SlotPair> construct_full_packing(int num_slots, int offset, PackingPhase phase) {
  const auto feasibility = packing_feasibility(num_slots, offset);
  if (!feasibility.feasible) {
    throw std::domain_error("orbit period " + std::to_string(feasibility.period) +
                            " is odd: no full packing at offset " + std::to_string(offset));
  }
  const int period = feasibility.period;
  const int subrings = num_slots / period;
  std::vector<SlotPair> pairs;
  pairs.reserve(static_cast<std::size_t>(num_slots) / 2);
  for (int rep = 0; rep < subrings; ++rep) {
    const std::vector<int> orbit = slot_orbit(rep, offset, num_slots);
    const int shift = phase == PackingPhase::ClientFirst ? 0 : 1;
    for (int j = 0; j < period; j += 2) {
      const int client = orbit[static_cast<std::size_t>((j + shift) % period)];
      const int server = orbit[static_cast<std::size_t>((j + shift + 1) % period)];
      pairs.push_back(SlotPair{client, server});
    }
  }
  return pairs;
}

std::vector<SlotPair> evenly_spaced_assignment(int num_slots, int offset, int num_pairs) {
  check_geometry(num_slots, offset);
  if (num_pairs <= 0 || num_pairs * 2 > num_slots) {
    throw std::invalid_argument("num_pairs must satisfy 0 < 2*num_pairs <= num_slots");
  }
  const int stride = num_slots / num_pairs;
  std::vector<SlotPair> pairs;
  std::vector<char> used(static_cast<std::size_t>(num_slots), 0);
  for (int t = 0; t < num_pairs; ++t) {
    const int client = t * stride;
    const int server = (client + offset) % num_slots;
    if (used[client] || used[server] || client == server) {
      throw std::domain_error("spaced assignment collides at pair " + std::to_string(t));
    }
    used[client] = used[server] = 1;
    pairs.push_back(SlotPair{client, server});
  }
  return pairs;
}

AllocationResult solve_allocation(const AllocationRequest& request, long long work_bound) {
  const int n = request.num_slots;
  if (n <= 0) throw std::invalid_argument("num_slots must be positive");
  if (request.offsets.empty()) return AllocationResult{{}, 0, true};
  if (std::ssize(request.offsets) * 2 > n) {
    throw std::domain_error("more slot endpoints requested than slots available");
  }
  for (int offset : request.offsets) check_geometry(n, offset);

  double estimate = 1.0;
  const std::size_t endpoints = request.offsets.size() * 2;
  for (std::size_t i = 0; i < endpoints; ++i) estimate *= static_cast<double>(n - i);
  if (estimate > static_cast<double>(work_bound)) return solve_greedy(request);

  SearchState s;
  s.num_slots = n;
  s.offsets = request.offsets;
  s.tail_bound.assign(request.offsets.size() + 1, 0);
  for (std::size_t i = request.offsets.size(); i-- > 0;) {
    s.tail_bound[i] = s.tail_bound[i + 1] + std::max(request.offsets[i], 1);
  }
  s.used.assign(static_cast<std::size_t>(n), 0);
  s.current.resize(request.offsets.size());
  search(s, 0);
  if (!s.found) throw std::domain_error("no feasible slot assignment");
  return AllocationResult{std::move(s.best), s.best_total, true};
}

void validate_allocation(std::span<const SlotPair> pairs, int num_slots,
                         std::span<const int> offsets) {
  if (num_slots <= 0) throw std::invalid_argument("num_slots must be positive");
  if (!offsets.empty() && offsets.size() != pairs.size()) {
    throw std::invalid_argument("offsets must be empty or match the pair count");
  }
  std::vector<char> used(static_cast<std::size_t>(num_slots), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [client, server] = pairs[i];
    for (int slot : {client, server}) {
      if (slot < 0 || slot >= num_slots) {
        throw std::invalid_argument("pair " + std::to_string(i) + ": slot " +
                                    std::to_string(slot) + " out of range");
      }
      if (used[static_cast<std::size_t>(slot)]) {
        throw std::invalid_argument("pair " + std::to_string(i) + ": slot " +
                                    std::to_string(slot) + " already in use");
      }
      used[static_cast<std::size_t>(slot)] = 1;
    }
    const long long span = ring_distance(client, server, num_slots);
    const long long min_span = offsets.empty() ? 1 : std::max(offsets[i], 1);
    if (span < min_span) {
      throw std::invalid_argument("pair " + std::to_string(i) + ": span " +
                                  std::to_string(span) + " below required " +
                                  std::to_string(min_span));
    }
  }
}

}  // namespace jitnet
