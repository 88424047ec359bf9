#pragma once

#include "nashfl/mechanisms.hpp"
#include "nashfl/model.hpp"

#include <vector>

namespace nashfl {

/// Default spacing of candidate misreports scanned by best_response.
inline constexpr double kManipulationGridStep = 1e-3;

/// Outcome of a unilateral best-response search for one agent. `gain` is a
/// lower bound on the agent's best achievable improvement; the truthful
/// report is always among the candidates, so gain >= 0.
struct ManipulationFinding {
  MechanismId mechanism = MechanismId::Mid;
  std::vector<double> profile;  ///< original-order locations
  Index agent = 0;              ///< original-order index
  double true_location = 0.0;
  double best_report = 0.0;
  double truthful_utility = 0.0;
  double manipulated_utility = 0.0;
  double gain = 0.0;
};

/// Scans misreports for `agent` on a grid of `grid_step` over [0,1] plus
/// the breakpoints {other agents' locations, 0, 1/2, 1, truthful report},
/// then refines the best cell by golden section on the agent's true
/// utility. Empirical up to grid resolution: the result is a certified
/// lower bound on the best response, not a proof of strategy-proofness.
ManipulationFinding best_response(MechanismId id, const LocationProfile& profile, Index agent,
                                  const SolveConfig& cfg = {},
                                  double grid_step = kManipulationGridStep);

struct StrategyproofnessSummary {
  double max_gain = 0.0;
  ManipulationFinding witness;
  std::size_t pairs_audited = 0;
};

/// Max best-response gain over every (profile, agent) pair; the witness is
/// the maximizing finding (ties broken toward the earliest pair).
StrategyproofnessSummary audit_strategyproofness(MechanismId id,
                                                 const std::vector<LocationProfile>& profiles,
                                                 const SolveConfig& cfg = {},
                                                 double grid_step = kManipulationGridStep);

}  // namespace nashfl
