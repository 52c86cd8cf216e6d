#pragma once

#include <cstdint>

namespace bf {

// splitmix64 step; used only to derive well-separated substream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for substream `index` of a master seed. Trials seeded this way are
// independent of scheduling, so parallel runs reproduce serial results.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  splitmix64_next(s);
  return splitmix64_next(s);
}

// Uniform in [0,1) from the top 53 bits; avoids distribution objects whose
// output is implementation-defined.
template <typename Engine>
double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace bf
