#pragma once

#include "nashfl/model.hpp"

#include <string>

namespace nashfl {

/// The four deterministic placement rules. CLI names: mid, med,
/// midornearest, nashfl (case-insensitive).
enum class MechanismId { Mid, Med, MidOrNearest, NashFL };

std::string to_string(MechanismId id);

/// Parses a CLI mechanism name; throws std::domain_error on unknown names.
MechanismId parse_mechanism(std::string name);

/// (x1 + xn) / 2 — maximizes egalitarian social welfare.
FacilityPlacement mid(const LocationProfile& profile);
double mid(ArrayRef sorted);

/// Leftmost median: x_{(n+1)/2} for odd n, x_{n/2} for even n (1-based) —
/// maximizes utilitarian social welfare.
FacilityPlacement med(const LocationProfile& profile);
double med(ArrayRef sorted);

/// 1/2 when x1 <= 1/2 <= xn, otherwise the agent closest to 1/2.
/// Strategy-proof; equals the phantom-median mechanism with n-1 phantoms
/// at 1/2.
FacilityPlacement mid_or_nearest(const LocationProfile& profile);
double mid_or_nearest(ArrayRef sorted);

/// Dispatches on `id`; cfg only affects the NashFL path.
FacilityPlacement apply_mechanism(MechanismId id, const LocationProfile& profile,
                                  const SolveConfig& cfg = {});

}  // namespace nashfl
