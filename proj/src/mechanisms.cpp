#include "nashfl/mechanisms.hpp"

#include "nashfl/solver.hpp"

#include <algorithm>
#include <cctype>

namespace nashfl {

std::string to_string(MechanismId id) {
  switch (id) {
    case MechanismId::Mid:
      return "mid";
    case MechanismId::Med:
      return "med";
    case MechanismId::MidOrNearest:
      return "midornearest";
    case MechanismId::NashFL:
      return "nashfl";
  }
  return "unknown";
}

MechanismId parse_mechanism(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "mid") return MechanismId::Mid;
  if (name == "med") return MechanismId::Med;
  if (name == "midornearest") return MechanismId::MidOrNearest;
  if (name == "nashfl") return MechanismId::NashFL;
  throw std::domain_error("unknown mechanism '" + name + "' (expected mid, med, midornearest or nashfl)");
}

double mid(ArrayRef sorted) { return 0.5 * (sorted[0] + sorted[sorted.size() - 1]); }

double med(ArrayRef sorted) {
  const Index n = sorted.size();
  // Leftmost point of the optimal interval: 1-based rank (n+1)/2 for odd n,
  // n/2 for even n, both equal to 0-based index (n-1)/2.
  return sorted[(n - 1) / 2];
}

double mid_or_nearest(ArrayRef sorted) {
  const double lo = sorted[0];
  const double hi = sorted[sorted.size() - 1];
  if (lo <= 0.5 && 0.5 <= hi) return 0.5;
  return lo > 0.5 ? lo : hi;
}

FacilityPlacement mid(const LocationProfile& profile) { return {mid(profile.locations()), 0.0}; }
FacilityPlacement med(const LocationProfile& profile) { return {med(profile.locations()), 0.0}; }
FacilityPlacement mid_or_nearest(const LocationProfile& profile) {
  return {mid_or_nearest(profile.locations()), 0.0};
}

FacilityPlacement apply_mechanism(MechanismId id, const LocationProfile& profile,
                                  const SolveConfig& cfg) {
  switch (id) {
    case MechanismId::Mid:
      return mid(profile);
    case MechanismId::Med:
      return med(profile);
    case MechanismId::MidOrNearest:
      return mid_or_nearest(profile);
    case MechanismId::NashFL:
      return nash_fl(profile, cfg);
  }
  throw std::domain_error("invalid mechanism id");
}

}  // namespace nashfl
