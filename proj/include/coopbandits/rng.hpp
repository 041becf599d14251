#pragma once

#include <cstdint>
#include <span>

namespace coopbandits {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) addressed by (seed, stream, counter), independent of call order.
constexpr double stream_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t h = mix64(mix64(mix64(seed) ^ stream) ^ (counter * 0xd1b54a32d192ed03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Inverse-CDF draw over actions in index order.
inline int sample_action(std::span<const double> p, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    cumulative += p[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

}  // namespace coopbandits
