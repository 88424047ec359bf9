#include "nashfl/rng.hpp"

namespace nashfl {

LocationProfile random_profile(std::uint64_t seed, std::uint64_t index, Index n) {
  SplitMix64 rng = stream(seed, index);
  Array xs(n);
  for (Index i = 0; i < n; ++i) xs[i] = rng.uniform();
  return LocationProfile(std::move(xs));
}

}  // namespace nashfl
