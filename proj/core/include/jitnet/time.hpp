#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jitnet {

// Simulation time and durations in integer nanoseconds.
using Tick = std::int64_t;

inline constexpr Tick kMicrosecond = 1'000;
inline constexpr Tick kMillisecond = 1'000'000;
inline constexpr Tick kSecond = 1'000'000'000;

// Integer division rounding half away from zero. Requires b > 0.
// Shared by the controller and the verifier so both quantize identically.
template <class I>
constexpr I rdiv(I a, I b) {
  return a >= 0 ? (a + b / 2) / b : -((-a + b / 2) / b);
}

// Exact ratio. Invariant: den > 0, gcd(|num|, den) == 1.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

constexpr Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return Rational{g ? num / g : num, g ? den / g : den};
}

// Parses "3/4", "0.5", "1.0005", or "2" into an exact ratio.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

}  // namespace jitnet
