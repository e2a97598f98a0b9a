#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <set>

#include "jitnet/rng.hpp"

using namespace jitnet;

TEST_CASE("make_stream is deterministic") {
  auto a = make_stream(42, 0);
  auto b = make_stream(42, 0);
  for (int i = 0; i < 16; ++i) CHECK(a() == b());
}

TEST_CASE("make_stream pins its output across platforms") {
  // Frozen first draws; a change here silently breaks every recorded run.
  auto a = make_stream(1, 0);
  CHECK(a() == 8372915069843099367ULL);
  CHECK(a() == 16873758101273434040ULL);
  CHECK(a() == 15056124132677130256ULL);
  auto b = make_stream(1, 1);
  CHECK(b() == 9048650802375257435ULL);
  auto c = make_stream(2, 0);
  CHECK(c() == 7123946141918122927ULL);
}

TEST_CASE("distinct streams of one seed differ") {
  auto a = make_stream(7, 0);
  auto b = make_stream(7, 1);
  auto c = make_stream(7, 2);
  int equal = 0;
  for (int i = 0; i < 8; ++i) {
    const auto x = a(), y = b(), z = c();
    equal += (x == y) + (y == z) + (x == z);
  }
  CHECK(equal == 0);
}

TEST_CASE("uniform_tick pins its output") {
  auto eng = make_stream(1, 0);
  CHECK(uniform_tick(eng, 0, 999'999) == 99367);
  CHECK(uniform_tick(eng, 0, 999'999) == 434040);
  CHECK(uniform_tick(eng, 0, 999'999) == 130256);
}

TEST_CASE("uniform_tick stays in range and reaches both endpoints") {
  auto eng = make_stream(3, 5);
  std::set<Tick> seen;
  for (int i = 0; i < 4096; ++i) {
    const Tick v = uniform_tick(eng, -2, 2);
    CHECK(v >= -2);
    CHECK(v <= 2);
    seen.insert(v);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("uniform_tick with a degenerate range returns the bound") {
  auto eng = make_stream(9, 0);
  for (int i = 0; i < 4; ++i) CHECK(uniform_tick(eng, 31, 31) == 31);
}

TEST_CASE("splitmix64 advances its state") {
  std::uint64_t s = 0;
  const std::uint64_t first = splitmix64(s);
  const std::uint64_t second = splitmix64(s);
  CHECK(first != second);
  CHECK(s == 2 * 0x9E3779B97F4A7C15ULL);
}
