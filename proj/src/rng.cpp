#include "spinglass/rng.hpp"

#include <cmath>
#include <numbers>

namespace spinglass {

std::pair<double, double> NormalStream::pair(std::uint64_t counter) const noexcept {
  const auto block = philox_(0, counter);
  const std::uint64_t hi = (std::uint64_t{block[1]} << 32) | block[0];
  const std::uint64_t lo = (std::uint64_t{block[3]} << 32) | block[2];
  constexpr double kScale = 0x1.0p-53;
  const double u1 = static_cast<double>((hi >> 11) + 1) * kScale;
  const double u2 = static_cast<double>(lo >> 11) * kScale;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace spinglass
