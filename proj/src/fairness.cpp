#include "nashfl/fairness.hpp"

#include <algorithm>

namespace nashfl {

namespace {

double audit_slack(MechanismId id, const SolveConfig& cfg) {
  if (id == MechanismId::NashFL) return std::max(kFairnessTol, 2.0 * cfg.eps_loc);
  return kFairnessTol;
}

}  // namespace

std::vector<Coalition> coalitions(const LocationProfile& profile) {
  std::vector<Coalition> out;
  const Array& xs = profile.locations();
  for (Index rank = 0; rank < xs.size(); ++rank) {
    if (out.empty() || xs[rank] != out.back().location) {
      out.push_back({xs[rank], {}});
    }
    out.back().members.push_back(profile.sort_order()[static_cast<std::size_t>(rank)]);
  }
  return out;
}

LocationProfile coalesce_locations(const LocationProfile& profile, double tol) {
  if (tol < 0.0) throw std::domain_error("coalesce tolerance must be non-negative");
  const Array& xs = profile.locations();
  Array merged(xs.size());
  double anchor = xs[0];
  for (Index rank = 0; rank < xs.size(); ++rank) {
    if (rank > 0 && xs[rank] - xs[rank - 1] > tol) anchor = xs[rank];
    merged[rank] = anchor;
  }
  return LocationProfile(std::move(merged));
}

std::vector<FairnessFinding> audit_ufs(MechanismId id, const LocationProfile& profile,
                                       const SolveConfig& cfg) {
  const double y = apply_mechanism(id, profile, cfg).y;
  const double slack = audit_slack(id, cfg);
  const double n = static_cast<double>(profile.size());

  std::vector<FairnessFinding> findings;
  for (Coalition& c : coalitions(profile)) {
    FairnessFinding f;
    f.mechanism = id;
    f.required = static_cast<double>(c.size()) / n;
    f.achieved = utility(y, c.location);
    f.slack = slack;
    f.satisfied = f.achieved >= f.required - slack;
    f.coalition = std::move(c);
    findings.push_back(std::move(f));
  }
  return findings;
}

std::vector<FairnessFinding> audit_ifs(MechanismId id, const LocationProfile& profile,
                                       const SolveConfig& cfg) {
  const double y = apply_mechanism(id, profile, cfg).y;
  const double slack = audit_slack(id, cfg);
  const double n = static_cast<double>(profile.size());

  std::vector<FairnessFinding> findings;
  findings.reserve(static_cast<std::size_t>(profile.size()));
  for (Index agent = 0; agent < profile.size(); ++agent) {
    FairnessFinding f;
    f.mechanism = id;
    f.coalition.location = profile.original_location(agent);
    f.coalition.members = {agent};
    f.required = 1.0 / n;
    f.achieved = utility(y, f.coalition.location);
    f.slack = slack;
    f.satisfied = f.achieved >= f.required - slack;
    findings.push_back(std::move(f));
  }
  return findings;
}

}  // namespace nashfl
