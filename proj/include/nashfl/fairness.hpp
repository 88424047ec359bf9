#pragma once

#include "nashfl/mechanisms.hpp"
#include "nashfl/model.hpp"

#include <vector>

namespace nashfl {

/// A maximal group of agents sharing one exact location. `members` are
/// original agent indices; coalitions partition the agent set.
struct Coalition {
  double location = 0.0;
  std::vector<Index> members;

  Index size() const { return static_cast<Index>(members.size()); }
};

/// One fair-share check: the coalition's common utility against its
/// proportional entitlement |S|/n (or 1/n per agent for IFS).
struct FairnessFinding {
  MechanismId mechanism = MechanismId::Mid;
  Coalition coalition;
  double required = 0.0;
  double achieved = 0.0;
  double slack = 0.0;  ///< tolerance subtracted from `required`
  bool satisfied = false;
};

/// Maximal exactly-co-located groups, left to right. Exact float equality
/// by design: the fair-share notions are defined on exact co-location.
std::vector<Coalition> coalitions(const LocationProfile& profile);

/// Merges locations whose consecutive sorted gaps are at most `tol` onto
/// each cluster's leftmost value (single-linkage), for auditing noisy
/// inputs. tol = 0 is the identity.
LocationProfile coalesce_locations(const LocationProfile& profile, double tol);

/// Default audit tolerance for mechanisms with exact placements.
inline constexpr double kFairnessTol = 1e-9;

/// Unanimous Fair Share: every coalition S must get utility >= |S|/n per
/// member. One finding per maximal coalition; the mechanism runs once.
/// NashFL audits use slack max(kFairnessTol, 2*eps_loc) to absorb solver
/// location error; everything else uses kFairnessTol.
std::vector<FairnessFinding> audit_ufs(MechanismId id, const LocationProfile& profile,
                                       const SolveConfig& cfg = {});

/// Individual Fair Share: every agent must get utility >= 1/n.
/// One finding per agent (a singleton coalition).
std::vector<FairnessFinding> audit_ifs(MechanismId id, const LocationProfile& profile,
                                       const SolveConfig& cfg = {});

}  // namespace nashfl
