#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "jitnet/csma.hpp"
#include "jitnet/time.hpp"

using namespace jitnet;

namespace {

double mean_wait(const CsmaResult& result) {
  long double sum = 0;
  for (const CsmaWait& w : result.waits) sum += w.wait;
  return static_cast<double>(sum / result.waits.size());
}

}  // namespace

TEST_CASE("every transmission starts on a slot boundary at or after ready") {
  CsmaConfig cfg;
  cfg.num_packets = 400;
  cfg.seed = 3;
  const CsmaResult result = run_csma(cfg);
  REQUIRE(result.waits.size() == 400);
  for (std::size_t i = 0; i < result.waits.size(); ++i) {
    const CsmaWait& w = result.waits[i];
    CHECK(w.packet == static_cast<int>(i));
    CHECK(w.tx_start >= w.ready);
    CHECK(w.tx_start % cfg.slot_time == 0);
    CHECK(w.wait == w.tx_start - w.ready);
    CHECK(w.wait >= 0);
  }
}

TEST_CASE("identical configurations replay identically") {
  CsmaConfig cfg;
  cfg.num_packets = 300;
  cfg.seed = 17;
  const CsmaResult a = run_csma(cfg);
  const CsmaResult b = run_csma(cfg);
  REQUIRE(a.waits.size() == b.waits.size());
  for (std::size_t i = 0; i < a.waits.size(); ++i) {
    CHECK(a.waits[i].ready == b.waits[i].ready);
    CHECK(a.waits[i].tx_start == b.waits[i].tx_start);
  }
}

TEST_CASE("an idle medium with a preset countdown gives the floor wait") {
  // Countdown of ceil(turnaround / slot) slots minus the turnaround itself:
  // 4 * 9 us - 30 us leaves 6 us of unavoidable alignment wait.
  CsmaConfig cfg;
  cfg.contenders = 0;
  cfg.server_preset = true;
  cfg.num_packets = 50;
  const CsmaResult result = run_csma(cfg);
  for (const CsmaWait& w : result.waits) CHECK(w.wait == 6'000);
  // Cycle length is the airtime rounded up to slots plus the countdown.
  for (std::size_t i = 1; i < result.waits.size(); ++i) {
    CHECK(result.waits[i].tx_start - result.waits[i - 1].tx_start == 189'000);
  }
}

TEST_CASE("an idle medium bounds the drawn-countdown waits") {
  CsmaConfig pull;
  pull.contenders = 0;
  pull.num_packets = 200;
  for (const CsmaWait& w : run_csma(pull).waits) CHECK(w.wait >= 6'000);

  CsmaConfig push = pull;
  push.mode = CsmaMode::Push;
  const CsmaResult pushed = run_csma(push);
  for (const CsmaWait& w : pushed.waits) {
    // Alignment floor plus a whole number of backoff slots under one window.
    CHECK(w.wait >= 6'000);
    CHECK((w.wait - 6'000) % 9'000 == 0);
    CHECK(w.wait < 6'000 + 16 * 9'000);
  }
  CHECK(pushed.waits[0].wait == 24'000);
  CHECK(pushed.waits[1].wait == 42'000);
  CHECK(pushed.waits[2].wait == 123'000);
}

TEST_CASE("starting the countdown before the response is ready wins") {
  for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL, 23ULL, 99ULL}) {
    CsmaConfig pull;
    pull.seed = seed;
    pull.num_packets = 500;
    CsmaConfig push = pull;
    push.mode = CsmaMode::Push;
    CHECK(mean_wait(run_csma(pull)) < mean_wait(run_csma(push)));
  }
}

TEST_CASE("contention raises waits above the idle floor") {
  CsmaConfig idle;
  idle.contenders = 0;
  idle.num_packets = 300;
  CsmaConfig busy = idle;
  busy.contenders = 5;
  CHECK(mean_wait(run_csma(busy)) > mean_wait(run_csma(idle)));
}

TEST_CASE("configuration errors are rejected") {
  CsmaConfig cfg;
  cfg.slot_time = 0;
  CHECK_THROWS_AS(run_csma(cfg), std::invalid_argument);
  cfg = CsmaConfig{};
  cfg.contention_window = 0;
  CHECK_THROWS_AS(run_csma(cfg), std::invalid_argument);
  cfg = CsmaConfig{};
  cfg.contenders = -1;
  CHECK_THROWS_AS(run_csma(cfg), std::invalid_argument);
  cfg = CsmaConfig{};
  cfg.num_packets = 0;
  CHECK_THROWS_AS(run_csma(cfg), std::invalid_argument);
}
