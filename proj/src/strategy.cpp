#include "nashfl/strategy.hpp"

#include "nashfl/parallel.hpp"
#include "nashfl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nashfl {

namespace {

double place_sorted(MechanismId id, const Array& sorted, const SolveConfig& cfg) {
  switch (id) {
    case MechanismId::Mid:
      return mid(sorted);
    case MechanismId::Med:
      return med(sorted);
    case MechanismId::MidOrNearest:
      return mid_or_nearest(sorted);
    case MechanismId::NashFL:
      return nash_fl(LocationProfile(sorted), cfg).y;
  }
  throw std::domain_error("invalid mechanism id");
}

/// Sorted locations of everyone but `agent` (an original-order index).
Array drop_agent(const LocationProfile& profile, Index agent) {
  const Array& xs = profile.locations();
  Array out(xs.size() - 1);
  Index at = 0;
  for (Index rank = 0; rank < xs.size(); ++rank) {
    if (profile.sort_order()[static_cast<std::size_t>(rank)] == agent) continue;
    out[at++] = xs[rank];
  }
  return out;
}

}  // namespace

ManipulationFinding best_response(MechanismId id, const LocationProfile& profile, Index agent,
                                  const SolveConfig& cfg, double grid_step) {
  if (agent < 0 || agent >= profile.size()) throw std::domain_error("agent index out of range");
  if (!(grid_step > 0.0 && grid_step <= 1.0)) throw std::domain_error("grid step must be in (0,1]");

  const double true_loc = profile.original_location(agent);
  const Array others = drop_agent(profile, agent);
  Array scratch(profile.size());

  // Agent's true utility when reporting r.
  auto report_utility = [&](double r) {
    const double* begin = others.data();
    const double* pos = std::upper_bound(begin, begin + others.size(), r);
    const Index split = pos - begin;
    scratch.head(split) = others.head(split);
    scratch[split] = r;
    scratch.tail(others.size() - split) = others.tail(others.size() - split);
    return utility(place_sorted(id, scratch, cfg), true_loc);
  };

  const double truthful_utility = report_utility(true_loc);
  double best_r = true_loc;
  double best_u = truthful_utility;
  auto consider = [&](double r) {
    const double u = report_utility(r);
    if (u > best_u) {
      best_u = u;
      best_r = r;
    }
  };

  const auto cells = static_cast<long>(std::floor(1.0 / grid_step));
  for (long i = 0; i <= cells; ++i) consider(std::min(1.0, static_cast<double>(i) * grid_step));
  consider(1.0);
  consider(0.5);
  for (Index i = 0; i < others.size(); ++i) consider(others[i]);

  // Golden-section refinement around the best cell, still tracking the best
  // point seen; mechanism outputs are only piecewise smooth in the report,
  // so this stays a lower-bound search rather than an exact optimizer.
  double lo = std::max(0.0, best_r - grid_step);
  double hi = std::min(1.0, best_r + grid_step);
  constexpr double kGolden = 0.6180339887498949;
  double a = hi - kGolden * (hi - lo);
  double b = lo + kGolden * (hi - lo);
  double fa = report_utility(a);
  double fb = report_utility(b);
  while (hi - lo > 1e-9) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + kGolden * (hi - lo);
      fb = report_utility(b);
      if (fb > best_u) {
        best_u = fb;
        best_r = b;
      }
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - kGolden * (hi - lo);
      fa = report_utility(a);
      if (fa > best_u) {
        best_u = fa;
        best_r = a;
      }
    }
  }

  ManipulationFinding finding;
  finding.mechanism = id;
  const Array original = profile.original();
  finding.profile.assign(original.data(), original.data() + original.size());
  finding.agent = agent;
  finding.true_location = true_loc;
  finding.best_report = best_r;
  finding.truthful_utility = truthful_utility;
  finding.manipulated_utility = best_u;
  finding.gain = best_u - truthful_utility;
  return finding;
}

StrategyproofnessSummary audit_strategyproofness(MechanismId id,
                                                 const std::vector<LocationProfile>& profiles,
                                                 const SolveConfig& cfg, double grid_step) {
  if (profiles.empty()) throw std::domain_error("audit requires at least one profile");

  std::vector<ManipulationFinding> best_per_profile(profiles.size());
  parallel_for(profiles.size(), [&](std::size_t i) {
    const LocationProfile& profile = profiles[i];
    ManipulationFinding best = best_response(id, profile, 0, cfg, grid_step);
    for (Index agent = 1; agent < profile.size(); ++agent) {
      ManipulationFinding f = best_response(id, profile, agent, cfg, grid_step);
      if (f.gain > best.gain) best = std::move(f);
    }
    best_per_profile[i] = std::move(best);
  });

  StrategyproofnessSummary summary;
  summary.witness = best_per_profile[0];
  summary.max_gain = best_per_profile[0].gain;
  for (const LocationProfile& p : profiles) summary.pairs_audited += static_cast<std::size_t>(p.size());
  for (std::size_t i = 1; i < best_per_profile.size(); ++i) {
    if (best_per_profile[i].gain > summary.max_gain) {
      summary.max_gain = best_per_profile[i].gain;
      summary.witness = best_per_profile[i];
    }
  }
  return summary;
}

}  // namespace nashfl
