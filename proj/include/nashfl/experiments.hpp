#pragma once

#include "nashfl/mechanisms.hpp"
#include "nashfl/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nashfl {

enum class Objective { Esw, Usw, Nash };

std::string to_string(Objective objective);
Objective parse_objective(std::string name);

/// One worst-case-ratio measurement. The optimal reference is the
/// objective's own maximizer (Mid for ESW, Med for USW, NashFL for Nash).
/// Nash-objective values are carried in log space so ratios survive large n;
/// `ratio` is +infinity exactly when the audited mechanism achieves 0 while
/// the optimum is positive.
struct RatioRecord {
  MechanismId mechanism = MechanismId::Mid;
  Objective objective = Objective::Esw;
  std::vector<double> profile;  ///< witness profile, sorted
  double optimal_value = 0.0;
  double achieved_value = 0.0;
  double log_optimal = 0.0;   ///< log of optimal_value (Nash objective only)
  double log_achieved = 0.0;  ///< log of achieved_value (Nash objective only)
  double ratio = 0.0;

  bool infinite() const;
};

RatioRecord approx_ratio(MechanismId id, Objective objective, const LocationProfile& profile,
                         const SolveConfig& cfg = {});

/// Extremal instances lifted from the worst-case analyses. The integer
/// argument is the profile size n for most families; `sandwich` and
/// `sp_impossibility_demo` read it as k (sizes 2k+1 and 2k), matching their
/// construction. `parameter` selects the sp_impossibility_demo variant:
/// absent/0 -> k at 0 and k at 1/4; 1 -> k at 0 and k at 1.
LocationProfile adversarial_profiles(const std::string& family, int n,
                                     std::optional<double> parameter = std::nullopt);

/// All registered family names, in a fixed order.
const std::vector<std::string>& family_names();

/// Families instantiated at exact profile size n (skipping those whose
/// arity cannot produce n agents), as (label, profile) pairs.
std::vector<std::pair<std::string, LocationProfile>> applicable_family_profiles(int n);

struct WorstCase {
  RatioRecord record;
  std::string witness_label;  ///< "random#<i>" or a family name
};

/// Max approx_ratio over `samples` seeded uniform profiles of size n plus
/// every family applicable at n. Deterministic for a fixed seed regardless
/// of parallel scheduling (per-sample RNG streams are counter-derived).
WorstCase empirical_worst_case(MechanismId id, Objective objective, int n, int samples,
                               std::uint64_t seed, const SolveConfig& cfg = {});

/// Known worst-case bound annotation for one (mechanism, objective) cell
/// at size n.
struct CellBound {
  double upper = 0.0;          ///< +inf when unbounded, NaN when not stated
  std::string label;           ///< human-readable bound, e.g. "n/2"
  double family_target = 0.0;  ///< NaN when no tight family applies
  std::string tight_family;    ///< family expected to attain the target
};

CellBound cell_bound(MechanismId id, Objective objective, int n);

/// True when `record` respects `bound`: at most the upper bound (when one
/// is stated) and at least the tight family's target (when one exists),
/// both at 1e-6 relative tolerance. Unbounded cells require an infinite
/// empirical record.
bool bound_satisfied(const RatioRecord& record, const CellBound& bound);

struct TableCell {
  WorstCase worst;
  CellBound bound;
  bool pass = false;
};

struct Table1 {
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<TableCell> cells;  ///< 4 mechanisms x 3 objectives, row-major
};

/// The full benchmark matrix with theoretical annotations. A cell passes
/// when its empirical worst case is below the stated upper bound and at
/// least the tight family's target (tolerance 1e-6 relative).
Table1 table1_report(int n, int samples, std::uint64_t seed, const SolveConfig& cfg = {});

/// True iff usw(nash_fl(x), x) >= n/2 - 1e-9.
bool usw_floor_check(const LocationProfile& profile, const SolveConfig& cfg = {});

/// One step of the impossibility demonstration sweep: Nash log-values for
/// k agents at 0 with k at 1/4 (optimum and the value when the facility is
/// forced to 1/4) and for k at 0 with k at 1 (optimum), plus the log of the
/// resulting welfare-gap ratio. A numeric demonstration of the lower-bound
/// construction, not a proof.
struct ImpossibilityDemoRecord {
  int k = 0;
  double y_quarter = 0.0;        ///< NashFL on {0 x k, 1/4 x k}
  double log_opt_quarter = 0.0;  ///< log Nash at y_quarter
  double log_at_quarter = 0.0;   ///< log Nash with the facility at 1/4
  double log_ratio = 0.0;        ///< log_opt_quarter - log_at_quarter
  double y_full = 0.0;           ///< NashFL on {0 x k, 1 x k}
  double log_opt_full = 0.0;     ///< log Nash at y_full
};

ImpossibilityDemoRecord impossibility_demo_record(int k, const SolveConfig& cfg = {});

}  // namespace nashfl
