#pragma once

#include "nashfl/model.hpp"

#include <cstdint>

namespace nashfl {

/// Small counter-derivable generator (splitmix64). Every sample of an
/// experiment gets its own stream keyed by (seed, sample index), so runs
/// are reproducible no matter how the sample loop is scheduled.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// Stream for sample `index` of run `seed`.
inline SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0xA0761D6478BD642FULL + index * 0xE7037ED1A0B428DBULL));
  mixer.next();
  return mixer;
}

/// n i.i.d. uniform locations, sorted by the profile constructor.
LocationProfile random_profile(std::uint64_t seed, std::uint64_t index, Index n);

}  // namespace nashfl
