#pragma once

#include <cstdint>

namespace arat {

/// SplitMix64.  State advances by the golden-ratio increment; outputs are
/// the Stafford mix13 finalizer of the state.  Used everywhere randomness
/// is needed so that results are reproducible bit for bit across platforms
/// (std::uniform_real_distribution makes no such promise).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1): the top 53 bits of next() scaled by 2^-53.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Seed of the per-episode substream used by the simulator.  The stream for
/// episode e of a run seeded with s starts from
///   mix13(s + 0x9e3779b97f4a7c15 * (e + 1))
/// which is SplitMix64(s) advanced e+1 steps; distinct episodes therefore
/// get decorrelated, order-independent streams.
inline std::uint64_t episode_stream_seed(std::uint64_t seed, std::uint64_t episode) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (episode + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace arat
