#pragma once

#include <cstdint>

namespace dimtrunc {

// Reproducible random stream: xoshiro256++ seeded through SplitMix64 from a
// (seed, stream) pair. Streams with distinct indices are statistically
// independent, and a given (seed, stream) always reproduces the same draws,
// independent of how many other streams exist or which thread consumes them.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
    // Run the stream index through SplitMix64 twice before mixing so that
    // nearby indices land on unrelated states.
    std::uint64_t z = seed;
    std::uint64_t mixed_stream = splitmix(z + 0x9e3779b97f4a7c15ULL * (stream + 1));
    z = seed ^ splitmix(mixed_stream);
    for (auto& word : state_) {
      z += 0x9e3779b97f4a7c15ULL;
      word = splitmix(z);
    }
    // xoshiro forbids the all-zero state.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[3] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform draw strictly inside (0,1): (n + 1/2) / 2^53 over the top 53 bits.
  // Staying away from the endpoints keeps quantile transforms finite.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t splitmix(std::uint64_t&& x) {
    std::uint64_t tmp = x;
    return splitmix(tmp);
  }

  std::uint64_t state_[4];
};

}  // namespace dimtrunc
