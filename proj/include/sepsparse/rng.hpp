#pragma once

// Counter-based random streams. A stream is fully determined by
// (seed, stream id); the n-th draw is a SplitMix64 hash of the counter, so
// streams can be split without coordination.

#include <cstdint>
#include <limits>

namespace sepsparse {

/// Stream ids used by the generators; keep stable, they fix every instance.
enum class Stream : std::uint64_t {
  kUniform = 1,
  kPoissonGaps = 2,
  kPoissonValues = 3,
  kSensing = 4,
  kNoise = 5,
  kSignalSupport = 6,
  kSignalValues = 7,
  kRipSupport = 8,
  kRipValues = 9,
  kBench = 10,
};

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// UniformRandomBitGenerator over a (key, counter) pair.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream)
      : key_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}
  Rng(std::uint64_t seed, Stream stream) : Rng(seed, static_cast<std::uint64_t>(stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return splitmix64(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Child stream, independent of this one's draws.
  Rng split(std::uint64_t child) const { return Rng(key_, child + 0x100); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Per-cell seed derived from a master seed and a tuple of coordinates.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

}  // namespace sepsparse
