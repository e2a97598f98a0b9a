#pragma once

#include "jitnet/time.hpp"

namespace jitnet {

// Affine virtual clock over the shared reference timeline:
//   local(t) = initial_offset + tick_ratio * t.
// Conversions round half away from zero; round-tripping a value moves it by
// at most one tick.
struct VirtualClock {
  Rational tick_ratio{1, 1};
  Tick initial_offset = 0;

  Tick to_local(Tick reference) const;
  Tick to_reference(Tick local) const;

  // Instantaneous clock offset local(t) - t at reference time t.
  Tick offset_at(Tick reference) const;
};

// The three drift settings used across experiments: 1 is drift-free, 2 runs
// the local clock slow by 0.05%, 3 runs it fast by 0.05%.
VirtualClock clock_for_setting(int setting, Tick initial_offset = 0);

}  // namespace jitnet
