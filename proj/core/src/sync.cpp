#include "jitnet/sync.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jitnet {

Tick estimate_slack_target(std::span<const Tick> delay_samples) {
  if (delay_samples.size() < 2) {
    throw std::invalid_argument("slack target estimation needs at least two delay samples");
  }
  const auto [lo, hi] = std::minmax_element(delay_samples.begin(), delay_samples.end());
  return *hi - *lo;
}

Tick ewma_correction(const SyncConfig& config, Tick previous, Tick slack) {
  const std::int64_t num = config.alpha.num;
  const std::int64_t den = config.alpha.den;
  if (num <= 0 || num > den) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  const __int128 blended = static_cast<__int128>(den - num) * previous +
                           static_cast<__int128>(num) * (slack - config.slack_target);
  return static_cast<Tick>(rdiv<__int128>(blended, den));
}

SyncController::SyncController(SyncConfig config, Tick first_pull_local)
    : config_(config), pull_local_(first_pull_local) {
  if (config_.frame <= 0) throw std::invalid_argument("frame duration must be positive");
}

void SyncController::apply_feedback(std::int64_t index, Tick slack, int frames_ahead) {
  if (index != index_) {
    throw std::logic_error("pull feedback out of order");
  }
  if (frames_ahead < 1) {
    throw std::invalid_argument("frames_ahead must be at least 1");
  }
  correction_ = ewma_correction(config_, correction_, slack);
  pull_local_ += static_cast<Tick>(frames_ahead) * config_.frame + correction_;
  ++index_;
}

std::pair<std::complex<double>, std::complex<double>> controller_poles(const Rational& alpha) {
  const double a = static_cast<double>(alpha.num) / static_cast<double>(alpha.den);
  if (a <= 0.0 || a >= 1.0) {
    throw std::invalid_argument("pole analysis requires alpha in (0, 1)");
  }
  const double real = 1.0 - a;
  const double imag = std::sqrt(a * (1.0 - a));
  return {std::complex<double>{real, imag}, std::complex<double>{real, -imag}};
}

}  // namespace jitnet
