#include <catch2/catch_amalgamated.hpp>

#include "nashfl/rng.hpp"
#include "nashfl/strategy.hpp"

#include <vector>

using namespace nashfl;

namespace {

std::vector<LocationProfile> random_profiles(std::uint64_t seed, int count, Index max_n) {
  std::vector<LocationProfile> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    SplitMix64 rng = stream(seed, static_cast<std::uint64_t>(i));
    const Index n = 2 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(max_n - 1)));
    out.push_back(random_profile(seed, static_cast<std::uint64_t>(i), n));
  }
  return out;
}

/// Profiles with n in {2..8} until they hold at least `pairs` agents.
std::vector<LocationProfile> profiles_for_pairs(std::uint64_t seed, std::size_t pairs) {
  std::vector<LocationProfile> out;
  std::size_t total = 0;
  for (std::uint64_t i = 0; total < pairs; ++i) {
    SplitMix64 rng = stream(seed, i);
    const Index n = 2 + static_cast<Index>(rng.below(7));
    out.push_back(random_profile(seed, i, n));
    total += static_cast<std::size_t>(n);
  }
  return out;
}

}  // namespace

TEST_CASE("NashFL is manipulable: agent at 0.5 pulls the facility home") {
  const auto f = best_response(MechanismId::NashFL, LocationProfile{0.0, 0.5}, 1);
  CHECK(f.true_location == 0.5);
  CHECK_THAT(f.best_report, Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(f.truthful_utility, Catch::Matchers::WithinAbs(0.75, 1e-12));
  CHECK_THAT(f.manipulated_utility, Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK(f.gain >= 0.25 - 1e-9);
}

TEST_CASE("midpoint is manipulable by an extreme report") {
  const auto f = best_response(MechanismId::Mid, LocationProfile{0.0, 0.8}, 1);
  // Reporting 1 moves the midpoint from 0.4 to 0.5, closer to 0.8.
  CHECK_THAT(f.best_report, Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(f.gain, Catch::Matchers::WithinAbs(0.1, 1e-9));
}

TEST_CASE("gain is never negative: the truthful report is a candidate") {
  for (int trial = 0; trial < 100; ++trial) {
    SplitMix64 rng = stream(55, static_cast<std::uint64_t>(trial));
    const Index n = 2 + static_cast<Index>(rng.below(6));
    const LocationProfile profile = random_profile(55, static_cast<std::uint64_t>(trial), n);
    const auto agent = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    for (MechanismId id :
         {MechanismId::Mid, MechanismId::Med, MechanismId::MidOrNearest, MechanismId::NashFL}) {
      CHECK(best_response(id, profile, agent).gain >= 0.0);
    }
  }
}

TEST_CASE("median audit finds no profitable misreport over 1e5 pairs") {
  const auto profiles = profiles_for_pairs(1234, 100000);
  const auto summary = audit_strategyproofness(MechanismId::Med, profiles);
  CHECK(summary.max_gain <= 1e-9);
  CHECK(summary.pairs_audited >= 100000);
}

TEST_CASE("mid-or-nearest audit finds no profitable misreport over 1e5 pairs") {
  const auto profiles = profiles_for_pairs(4321, 100000);
  const auto summary = audit_strategyproofness(MechanismId::MidOrNearest, profiles);
  CHECK(summary.max_gain <= 1e-9);
  CHECK(summary.pairs_audited >= 100000);
}

TEST_CASE("audit surfaces the NashFL witness") {
  std::vector<LocationProfile> profiles = random_profiles(9, 20, 6);
  profiles.emplace_back(LocationProfile{0.0, 0.5});
  const auto summary = audit_strategyproofness(MechanismId::NashFL, profiles);
  CHECK(summary.max_gain >= 0.25 - 1e-9);
}

TEST_CASE("finding reports the profile in original order") {
  const auto f = best_response(MechanismId::Med, LocationProfile{0.9, 0.1, 0.4}, 0);
  CHECK(f.profile == std::vector<double>{0.9, 0.1, 0.4});
  CHECK(f.agent == 0);
  CHECK(f.true_location == 0.9);
}

TEST_CASE("strategy input validation") {
  const LocationProfile profile{0.2, 0.8};
  CHECK_THROWS_AS(best_response(MechanismId::Mid, profile, 2), std::domain_error);
  CHECK_THROWS_AS(best_response(MechanismId::Mid, profile, -1), std::domain_error);
  CHECK_THROWS_AS(best_response(MechanismId::Mid, profile, 0, SolveConfig{}, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(audit_strategyproofness(MechanismId::Mid, {}), std::domain_error);
}

TEST_CASE("audit is deterministic") {
  const auto profiles = random_profiles(777, 50, 6);
  const auto a = audit_strategyproofness(MechanismId::NashFL, profiles);
  const auto b = audit_strategyproofness(MechanismId::NashFL, profiles);
  CHECK(a.max_gain == b.max_gain);
  CHECK(a.witness.profile == b.witness.profile);
  CHECK(a.witness.agent == b.witness.agent);
  CHECK(a.witness.best_report == b.witness.best_report);
}
