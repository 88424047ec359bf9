#include <catch2/catch_amalgamated.hpp>

#include "nashfl/mechanisms.hpp"
#include "nashfl/rng.hpp"
#include "nashfl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace nashfl;

TEST_CASE("mid examples") {
  CHECK(mid(LocationProfile{0.0, 1.0}).y == 0.5);
  CHECK(mid(LocationProfile{0.0, 0.0, 0.0, 1.0}).y == 0.5);
  CHECK_THAT(mid(LocationProfile{0.2, 0.4, 0.9}).y, Catch::Matchers::WithinAbs(0.55, 1e-15));
}

TEST_CASE("med examples and the leftmost tie-break") {
  CHECK(med(LocationProfile{0.0, 0.0, 1.0}).y == 0.0);
  CHECK(med(LocationProfile{0.0, 1.0}).y == 0.0);
  CHECK(med(LocationProfile{0.1, 0.5, 0.9}).y == 0.5);
  CHECK(med(LocationProfile{0.1, 0.2, 0.6, 0.9}).y == 0.2);
  CHECK(med(LocationProfile{0.3, 0.4, 0.5, 0.6, 0.7, 0.8}).y == 0.5);
}

TEST_CASE("mid_or_nearest case split") {
  CHECK(mid_or_nearest(LocationProfile{0.0, 1.0}).y == 0.5);
  CHECK(mid_or_nearest(LocationProfile{0.6, 0.8}).y == 0.6);
  CHECK(mid_or_nearest(LocationProfile{0.1, 0.3, 0.45}).y == 0.45);
  for (int n : {3, 5, 8}) {
    Array xs = Array::Zero(n);
    xs[n - 1] = 0.5;
    CHECK(mid_or_nearest(LocationProfile(std::move(xs))).y == 0.5);
  }
}

TEST_CASE("apply_mechanism dispatches") {
  const LocationProfile two{0.0, 1.0};
  CHECK(apply_mechanism(MechanismId::Mid, two).y == 0.5);
  CHECK(apply_mechanism(MechanismId::Med, LocationProfile{0.0, 0.0, 1.0}).y == 0.0);
  CHECK_THAT(
      apply_mechanism(MechanismId::NashFL, LocationProfile{1.0 / 7.0, 2.0 / 7.0, 6.0 / 7.0}).y,
      Catch::Matchers::WithinAbs(0.30764799932526397, 1e-9));
}

TEST_CASE("mechanism names round-trip and parse case-insensitively") {
  for (MechanismId id :
       {MechanismId::Mid, MechanismId::Med, MechanismId::MidOrNearest, MechanismId::NashFL}) {
    CHECK(parse_mechanism(to_string(id)) == id);
  }
  CHECK(parse_mechanism("NashFL") == MechanismId::NashFL);
  CHECK(parse_mechanism("MIDORNEAREST") == MechanismId::MidOrNearest);
  CHECK_THROWS_AS(parse_mechanism("midpoint"), std::domain_error);
}

TEST_CASE("every mechanism returns x1 for a single agent") {
  const LocationProfile one{0.37};
  for (MechanismId id :
       {MechanismId::Mid, MechanismId::Med, MechanismId::MidOrNearest, MechanismId::NashFL}) {
    CHECK(apply_mechanism(id, one).y == 0.37);
  }
}

TEST_CASE("mid maximizes egalitarian welfare on a fine grid") {
  for (int trial = 0; trial < 200; ++trial) {
    SplitMix64 rng = stream(11, static_cast<std::uint64_t>(trial));
    const Index n = 1 + static_cast<Index>(rng.below(8));
    const LocationProfile profile = random_profile(11, static_cast<std::uint64_t>(trial), n);
    const double best = esw(mid(profile).y, profile);
    for (int i = 0; i <= 500; ++i) {
      CHECK(best >= esw(i / 500.0, profile) - 1e-12);
    }
  }
}

TEST_CASE("med maximizes utilitarian welfare on a fine grid") {
  for (int trial = 0; trial < 200; ++trial) {
    SplitMix64 rng = stream(12, static_cast<std::uint64_t>(trial));
    const Index n = 1 + static_cast<Index>(rng.below(8));
    const LocationProfile profile = random_profile(12, static_cast<std::uint64_t>(trial), n);
    const double best = usw(med(profile).y, profile);
    for (int i = 0; i <= 500; ++i) {
      CHECK(best >= usw(i / 500.0, profile) - 1e-12);
    }
  }
}

TEST_CASE("mid_or_nearest equals the phantom median") {
  for (int trial = 0; trial < 2000; ++trial) {
    SplitMix64 rng = stream(13, static_cast<std::uint64_t>(trial));
    const Index n = 1 + static_cast<Index>(rng.below(9));
    const LocationProfile profile = random_profile(13, static_cast<std::uint64_t>(trial), n);

    std::vector<double> pool(profile.locations().data(), profile.locations().data() + n);
    pool.insert(pool.end(), static_cast<std::size_t>(n) - 1, 0.5);
    std::nth_element(pool.begin(), pool.begin() + (n - 1), pool.end());
    const double phantom = pool[static_cast<std::size_t>(n) - 1];

    CHECK(mid_or_nearest(profile).y == phantom);
  }
}

TEST_CASE("mechanisms are anonymous") {
  for (int trial = 0; trial < 300; ++trial) {
    SplitMix64 rng = stream(14, static_cast<std::uint64_t>(trial));
    const Index n = 2 + static_cast<Index>(rng.below(7));
    const LocationProfile profile = random_profile(14, static_cast<std::uint64_t>(trial), n);

    Array shuffled = profile.locations();
    for (Index i = n - 1; i > 0; --i) {
      const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(shuffled[i], shuffled[j]);
    }
    const LocationProfile reordered(std::move(shuffled));
    for (MechanismId id :
         {MechanismId::Mid, MechanismId::Med, MechanismId::MidOrNearest, MechanismId::NashFL}) {
      CHECK(apply_mechanism(id, profile).y == apply_mechanism(id, reordered).y);
    }
  }
}

TEST_CASE("every mechanism stays within the agent span") {
  for (int trial = 0; trial < 300; ++trial) {
    SplitMix64 rng = stream(15, static_cast<std::uint64_t>(trial));
    const Index n = 1 + static_cast<Index>(rng.below(9));
    const LocationProfile profile = random_profile(15, static_cast<std::uint64_t>(trial), n);
    for (MechanismId id :
         {MechanismId::Mid, MechanismId::Med, MechanismId::MidOrNearest, MechanismId::NashFL}) {
      const double y = apply_mechanism(id, profile).y;
      CHECK(y >= profile.front());
      CHECK(y <= profile.back());
    }
  }
}

TEST_CASE("NashFL can leave the mid/med point") {
  const LocationProfile sandwich{0.0, 0.0, 0.0, 0.5, 0.5, 0.5, 1.0};
  CHECK(mid(sandwich).y == 0.5);
  CHECK(med(sandwich).y == 0.5);
  const double y = nash_fl(sandwich).y;
  CHECK(y < 0.5);
  CHECK_THAT(y, Catch::Matchers::WithinAbs(0.446, 5e-4));
}
