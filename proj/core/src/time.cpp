#include "jitnet/time.hpp"

#include <cctype>
#include <charconv>

namespace jitnet {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("rational: bad " + std::string(what) + " in '" +
                                std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("rational: empty");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(text.substr(0, slash), "numerator");
    const std::int64_t den = parse_int(text.substr(slash + 1), "denominator");
    return make_rational(num, den);
  }

  const auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    return make_rational(parse_int(text, "integer"), 1);
  }

  const bool negative = text.front() == '-';
  std::string_view whole = text.substr(0, dot);
  if (negative) whole.remove_prefix(1);
  const std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 18) {
    throw std::invalid_argument("rational: more than 18 fraction digits in '" +
                                std::string(text) + "'");
  }
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("rational: bad fraction in '" + std::string(text) + "'");
    }
  }

  const std::int64_t whole_part = whole.empty() ? 0 : parse_int(whole, "integer part");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const std::int64_t frac_part = frac.empty() ? 0 : parse_int(frac, "fraction part");
  const std::int64_t num = whole_part * den + frac_part;
  return make_rational(negative ? -num : num, den);
}

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace jitnet
