#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "jitnet/time.hpp"

using namespace jitnet;

TEST_CASE("rdiv rounds half away from zero") {
  CHECK(rdiv<std::int64_t>(7, 2) == 4);
  CHECK(rdiv<std::int64_t>(-7, 2) == -4);
  CHECK(rdiv<std::int64_t>(5, 2) == 3);
  CHECK(rdiv<std::int64_t>(-5, 2) == -3);
  CHECK(rdiv<std::int64_t>(4, 2) == 2);
  CHECK(rdiv<std::int64_t>(-4, 2) == -2);
  CHECK(rdiv<std::int64_t>(1, 3) == 0);
  CHECK(rdiv<std::int64_t>(2, 3) == 1);
  CHECK(rdiv<std::int64_t>(-1, 3) == 0);
  CHECK(rdiv<std::int64_t>(-2, 3) == -1);
  CHECK(rdiv<std::int64_t>(0, 5) == 0);
}

TEST_CASE("rdiv is exact when the division is exact") {
  // One frame scaled by the slow-clock ratio has no remainder.
  CHECK(rdiv<std::int64_t>(9'600'000LL * 1999, 2000) == 9'595'200);
  CHECK(rdiv<__int128>(static_cast<__int128>(9'600'000) * 2001, 2000) == 9'604'800);
}

TEST_CASE("rdiv error is at most half the divisor") {
  for (std::int64_t a = -200; a <= 200; ++a) {
    for (std::int64_t b : {1, 2, 3, 7, 64}) {
      const std::int64_t q = rdiv(a, b);
      const std::int64_t err = q * b - a;
      CHECK(2 * (err < 0 ? -err : err) <= b);
    }
  }
}

TEST_CASE("make_rational normalizes sign and gcd") {
  CHECK(make_rational(2, 4) == Rational{1, 2});
  CHECK(make_rational(-2, -4) == Rational{1, 2});
  CHECK(make_rational(3, -6) == Rational{-1, 2});
  CHECK(make_rational(0, 7) == Rational{0, 1});
  CHECK(make_rational(1999, 2000) == Rational{1999, 2000});
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse_rational accepts fractions, decimals, and integers") {
  CHECK(parse_rational("1/2") == Rational{1, 2});
  CHECK(parse_rational("3/4") == Rational{3, 4});
  CHECK(parse_rational("1999/2000") == Rational{1999, 2000});
  CHECK(parse_rational("2001/2000") == Rational{2001, 2000});
  CHECK(parse_rational("2") == Rational{2, 1});
  CHECK(parse_rational("-3") == Rational{-3, 1});
  CHECK(parse_rational("0.5") == Rational{1, 2});
  CHECK(parse_rational(".5") == Rational{1, 2});
  CHECK(parse_rational("0.25") == Rational{1, 4});
  CHECK(parse_rational("-0.25") == Rational{-1, 4});
  CHECK(parse_rational("1.0005") == Rational{2001, 2000});
  CHECK(parse_rational("0.9995") == Rational{1999, 2000});
  // A drift of five parts per million stays exact.
  CHECK(parse_rational("1.000005") == Rational{200001, 200000});
  CHECK(parse_rational("1.") == Rational{1, 1});
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1//2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.1234567890123456789"), std::invalid_argument);
}

TEST_CASE("to_string round-trips through parse_rational") {
  for (const Rational r : {Rational{1, 2}, Rational{1999, 2000}, Rational{-3, 7}, Rational{5, 1}}) {
    CHECK(parse_rational(to_string(r)) == r);
  }
  CHECK(to_string(Rational{5, 1}) == "5");
  CHECK(to_string(Rational{1999, 2000}) == "1999/2000");
}
