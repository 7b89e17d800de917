// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace incomedist {

// Deterministic generator used by every stochastic routine in the library.
//
// Core is xoshiro256++ (Blackman & Vigna) seeded through splitmix64, which is
// the recommended way to expand a 64-bit seed into full state. Sub-streams
// are derived by the documented split rule: stream i of seed s re-seeds
// splitmix64 at s + (i+1) * 0x9E3779B97F4A7C15. Outputs are identical across
// platforms; none of the implementation-defined std <random> distributions
// are used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {
    std::uint64_t sm = seed + (stream + 1) * 0x9E3779B97F4A7C15ull;
    for (auto& word : state_) word = splitmix64(sm);
    // A zero state would be a fixed point; splitmix64 makes this impossible
    // for any seed, but keep the guard in case the constants ever change.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  Rng split(std::uint64_t stream) const { return Rng(seed_, stream); }

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

  // Uniform in [0,1) with 53 random bits; never returns 1.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (-n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Unit-rate exponential; uniform01() < 1 keeps the log argument positive.
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_[4];
};

}  // namespace incomedist
