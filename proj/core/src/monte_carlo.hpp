#pragma once

#include <cstdint>
#include <random>

namespace pachsel::detail {

inline constexpr std::uint64_t kChunkSize = 1 << 16;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Calls body(rng) `samples` times. The stream is cut into fixed-size chunks,
// each with its own generator seeded from (seed, chunk index), so results do
// not depend on how chunks are scheduled.
template <class Body>
void for_each_sample(std::uint64_t samples, std::uint64_t seed, Body&& body) {
  const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(c)));
    const std::uint64_t end = std::min(samples, (c + 1) * kChunkSize);
    for (std::uint64_t s = c * kChunkSize; s < end; ++s) body(rng);
  }
}

}  // namespace pachsel::detail
