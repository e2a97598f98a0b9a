#include "jitnet/clock.hpp"

namespace jitnet {

namespace {

Tick scale(Tick value, std::int64_t num, std::int64_t den) {
  const __int128 product = static_cast<__int128>(value) * num;
  return static_cast<Tick>(rdiv<__int128>(product, den));
}

}  // namespace

Tick VirtualClock::to_local(Tick reference) const {
  return initial_offset + scale(reference, tick_ratio.num, tick_ratio.den);
}

Tick VirtualClock::to_reference(Tick local) const {
  return scale(local - initial_offset, tick_ratio.den, tick_ratio.num);
}

Tick VirtualClock::offset_at(Tick reference) const {
  return to_local(reference) - reference;
}

VirtualClock clock_for_setting(int setting, Tick initial_offset) {
  switch (setting) {
    case 1:
      return VirtualClock{make_rational(1, 1), initial_offset};
    case 2:
      return VirtualClock{make_rational(1999, 2000), initial_offset};
    case 3:
      return VirtualClock{make_rational(2001, 2000), initial_offset};
    default:
      throw std::invalid_argument("clock setting must be 1, 2, or 3");
  }
}

}  // namespace jitnet
