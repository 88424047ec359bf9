#include "nashfl/experiments.hpp"

#include "nashfl/parallel.hpp"
#include "nashfl/rng.hpp"
#include "nashfl/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

namespace nashfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MechanismId optimal_mechanism(Objective objective) {
  switch (objective) {
    case Objective::Esw:
      return MechanismId::Mid;
    case Objective::Usw:
      return MechanismId::Med;
    case Objective::Nash:
      return MechanismId::NashFL;
  }
  throw std::domain_error("invalid objective");
}

/// Worse-than ordering for worst-case tracking: infinite records dominate,
/// Nash records compare by log-ratio, everything else by ratio.
bool beats(const RatioRecord& a, const RatioRecord& b) {
  if (a.infinite() != b.infinite()) return a.infinite();
  if (a.infinite()) return false;  // first infinite record wins
  if (a.objective == Objective::Nash && b.objective == Objective::Nash) {
    return (a.log_optimal - a.log_achieved) > (b.log_optimal - b.log_achieved);
  }
  return a.ratio > b.ratio;
}

double mid_nash_target(int n) {
  // (2^n / n) ((n-1)/n)^{n-1}, evaluated in log space.
  const double nd = n;
  return std::exp(nd * std::numbers::ln2 - std::log(nd) +
                  (nd - 1.0) * (std::log(nd - 1.0) - std::log(nd)));
}

int usw_tight_count(int n) {
  const double r = (2.0 - std::numbers::sqrt2) / 2.0;
  const auto k = static_cast<int>(std::lround(r * n));
  return std::clamp(k, 1, n - 1);
}

double usw_tight_target(int n) {
  const double r = static_cast<double>(usw_tight_count(n)) / n;
  return (1.0 - r) / (2.0 * r * r - 2.0 * r + 1.0);
}

LocationProfile repeated(std::initializer_list<std::pair<double, int>> groups) {
  Index total = 0;
  for (const auto& [loc, count] : groups) total += count;
  Array xs(total);
  Index at = 0;
  for (const auto& [loc, count] : groups) {
    for (int i = 0; i < count; ++i) xs[at++] = loc;
  }
  return LocationProfile(std::move(xs));
}

}  // namespace

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::Esw:
      return "esw";
    case Objective::Usw:
      return "usw";
    case Objective::Nash:
      return "nash";
  }
  return "unknown";
}

Objective parse_objective(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (name == "esw") return Objective::Esw;
  if (name == "usw") return Objective::Usw;
  if (name == "nash") return Objective::Nash;
  throw std::domain_error("unknown objective '" + name + "' (expected esw, usw or nash)");
}

bool RatioRecord::infinite() const { return achieved_value == 0.0 && optimal_value > 0.0; }

RatioRecord approx_ratio(MechanismId id, Objective objective, const LocationProfile& profile,
                         const SolveConfig& cfg) {
  const double y_opt = apply_mechanism(optimal_mechanism(objective), profile, cfg).y;
  const double y_alg = apply_mechanism(id, profile, cfg).y;

  RatioRecord rec;
  rec.mechanism = id;
  rec.objective = objective;
  const Array& xs = profile.locations();
  rec.profile.assign(xs.data(), xs.data() + xs.size());

  switch (objective) {
    case Objective::Esw:
      rec.optimal_value = esw(y_opt, profile);
      rec.achieved_value = esw(y_alg, profile);
      break;
    case Objective::Usw:
      rec.optimal_value = usw(y_opt, profile);
      rec.achieved_value = usw(y_alg, profile);
      break;
    case Objective::Nash:
      rec.log_optimal = log_nash(y_opt, profile);
      rec.log_achieved = log_nash(y_alg, profile);
      rec.optimal_value = std::exp(rec.log_optimal);
      rec.achieved_value = std::exp(rec.log_achieved);
      break;
  }
  if (rec.infinite()) {
    rec.ratio = kInf;
  } else if (objective == Objective::Nash) {
    rec.ratio = std::exp(rec.log_optimal - rec.log_achieved);
  } else {
    rec.ratio = rec.optimal_value / rec.achieved_value;
  }
  return rec;
}

LocationProfile adversarial_profiles(const std::string& family, int n,
                                     std::optional<double> parameter) {
  if (family == "egal_tight") {
    if (n < 3) throw std::domain_error("egal_tight requires n >= 3");
    return repeated({{0.0, n - 1}, {(n - 2.0) / (n - 1.0), 1}});
  }
  if (family == "usw_tight") {
    if (n < 2) throw std::domain_error("usw_tight requires n >= 2");
    const int k = usw_tight_count(n);
    return repeated({{0.0, n - k}, {1.0, k}});
  }
  if (family == "mid_nash") {
    if (n < 2) throw std::domain_error("mid_nash requires n >= 2");
    return repeated({{0.0, n - 1}, {1.0, 1}});
  }
  if (family == "midornearest_nash") {
    if (n < 2) throw std::domain_error("midornearest_nash requires n >= 2");
    return repeated({{0.0, n - 1}, {0.5, 1}});
  }
  if (family == "midornearest_egal") {
    if (n < 2) throw std::domain_error("midornearest_egal requires n >= 2");
    return repeated({{0.5, 1}, {1.0, n - 1}});
  }
  if (family == "sp_impossibility_demo") {
    if (n < 1) throw std::domain_error("sp_impossibility_demo requires k >= 1");
    const bool misreported = parameter.value_or(0.0) != 0.0;
    return repeated({{0.0, n}, {misreported ? 1.0 : 0.25, n}});
  }
  if (family == "sandwich") {
    if (n < 1) throw std::domain_error("sandwich requires k >= 1");
    return repeated({{0.0, n}, {0.5, n}, {1.0, 1}});
  }
  throw std::domain_error("unknown family '" + family + "'");
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "egal_tight",        "usw_tight",             "mid_nash", "midornearest_nash",
      "midornearest_egal", "sp_impossibility_demo", "sandwich"};
  return names;
}

std::vector<std::pair<std::string, LocationProfile>> applicable_family_profiles(int n) {
  std::vector<std::pair<std::string, LocationProfile>> out;
  if (n >= 3) out.emplace_back("egal_tight", adversarial_profiles("egal_tight", n));
  if (n >= 2) {
    out.emplace_back("usw_tight", adversarial_profiles("usw_tight", n));
    out.emplace_back("mid_nash", adversarial_profiles("mid_nash", n));
    out.emplace_back("midornearest_nash", adversarial_profiles("midornearest_nash", n));
    out.emplace_back("midornearest_egal", adversarial_profiles("midornearest_egal", n));
  }
  if (n >= 2 && n % 2 == 0) {
    out.emplace_back("sp_impossibility_demo",
                     adversarial_profiles("sp_impossibility_demo", n / 2));
    out.emplace_back("sp_impossibility_demo#misreport",
                     adversarial_profiles("sp_impossibility_demo", n / 2, 1.0));
  }
  if (n >= 3 && n % 2 == 1) {
    out.emplace_back("sandwich", adversarial_profiles("sandwich", (n - 1) / 2));
  }
  return out;
}

WorstCase empirical_worst_case(MechanismId id, Objective objective, int n, int samples,
                               std::uint64_t seed, const SolveConfig& cfg) {
  if (samples < 1) throw std::domain_error("empirical_worst_case requires samples >= 1");
  if (n < 1) throw std::domain_error("empirical_worst_case requires n >= 1");

  std::vector<RatioRecord> records(static_cast<std::size_t>(samples));
  parallel_for(records.size(), [&](std::size_t i) {
    records[i] = approx_ratio(id, objective, random_profile(seed, i, n), cfg);
  });

  WorstCase worst{records[0], "random#0"};
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (beats(records[i], worst.record)) {
      worst.record = records[i];
      worst.witness_label = "random#" + std::to_string(i);
    }
  }
  for (const auto& [label, profile] : applicable_family_profiles(n)) {
    RatioRecord rec = approx_ratio(id, objective, profile, cfg);
    if (beats(rec, worst.record)) {
      worst.record = std::move(rec);
      worst.witness_label = label;
    }
  }
  return worst;
}

CellBound cell_bound(MechanismId id, Objective objective, int n) {
  const double nd = n;
  CellBound b;
  switch (id) {
    case MechanismId::Mid:
      switch (objective) {
        case Objective::Esw:
          b = {1.0, "1", 1.0, "any"};
          break;
        case Objective::Usw:
          b = {2.0 - 2.0 / nd, "2-2/n", 2.0 - 2.0 / nd, "mid_nash"};
          break;
        case Objective::Nash:
          b = {std::exp2(nd), "O(2^n)", mid_nash_target(n), "mid_nash"};
          break;
      }
      break;
    case MechanismId::Med:
      switch (objective) {
        case Objective::Esw:
          b = {kInf, "inf", kInf, "mid_nash"};
          break;
        case Objective::Usw:
          b = {1.0, "1", 1.0, "any"};
          break;
        case Objective::Nash:
          b = {kInf, "inf", kInf, "mid_nash"};
          break;
      }
      break;
    case MechanismId::NashFL:
      switch (objective) {
        case Objective::Esw:
          if (n >= 3) {
            b = {nd / 2.0, "n/2", nd / 2.0, "egal_tight"};
          } else {
            b = {1.0, "n/2 (=1 at n=2)", 1.0, "any"};
          }
          break;
        case Objective::Usw:
          b = {2.0, "[1.2,2]", usw_tight_target(n), "usw_tight"};
          break;
        case Objective::Nash:
          b = {1.0, "1", 1.0, "any"};
          break;
      }
      break;
    case MechanismId::MidOrNearest:
      switch (objective) {
        case Objective::Esw:
          b = {1.5, "3/2", 1.5, "midornearest_egal"};
          break;
        case Objective::Usw:
          b = {2.0 - 2.0 / nd, "2-2/n", 2.0 - 2.0 / nd, "mid_nash"};
          break;
        case Objective::Nash:
          if (n >= 3) {
            b = {std::exp2(nd - 2.0), "2^(n-2)", std::exp2(nd - 2.0), "midornearest_nash"};
          } else {
            b = {kNaN, "n/a (n>=3)", kNaN, ""};
          }
          break;
      }
      break;
  }
  return b;
}

bool bound_satisfied(const RatioRecord& rec, const CellBound& bound) {
  constexpr double kTol = 1e-6;
  bool ok = true;
  if (std::isfinite(bound.upper)) {
    ok = ok && !rec.infinite() && rec.ratio <= bound.upper + kTol * std::max(1.0, bound.upper);
  }
  if (std::isinf(bound.family_target)) {
    ok = ok && rec.infinite();
  } else if (!std::isnan(bound.family_target)) {
    ok = ok && !rec.infinite() &&
         rec.ratio >= bound.family_target - kTol * std::max(1.0, bound.family_target);
  }
  return ok;
}

Table1 table1_report(int n, int samples, std::uint64_t seed, const SolveConfig& cfg) {
  if (n < 2) throw std::domain_error("table1 requires n >= 2");
  Table1 table;
  table.n = n;
  table.samples = samples;
  table.seed = seed;
  for (MechanismId id : {MechanismId::Mid, MechanismId::Med, MechanismId::NashFL,
                         MechanismId::MidOrNearest}) {
    for (Objective objective : {Objective::Esw, Objective::Usw, Objective::Nash}) {
      TableCell cell;
      cell.worst = empirical_worst_case(id, objective, n, samples, seed, cfg);
      cell.bound = cell_bound(id, objective, n);
      cell.pass = bound_satisfied(cell.worst.record, cell.bound);
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

bool usw_floor_check(const LocationProfile& profile, const SolveConfig& cfg) {
  const double y = nash_fl(profile, cfg).y;
  return usw(y, profile) >= static_cast<double>(profile.size()) / 2.0 - 1e-9;
}

ImpossibilityDemoRecord impossibility_demo_record(int k, const SolveConfig& cfg) {
  if (k < 1) throw std::domain_error("impossibility demo requires k >= 1");
  ImpossibilityDemoRecord rec;
  rec.k = k;

  const LocationProfile quarter = adversarial_profiles("sp_impossibility_demo", k);
  rec.y_quarter = nash_fl(quarter, cfg).y;
  rec.log_opt_quarter = log_nash(rec.y_quarter, quarter);
  rec.log_at_quarter = log_nash(0.25, quarter);
  rec.log_ratio = rec.log_opt_quarter - rec.log_at_quarter;

  const LocationProfile full = adversarial_profiles("sp_impossibility_demo", k, 1.0);
  rec.y_full = nash_fl(full, cfg).y;
  rec.log_opt_full = log_nash(rec.y_full, full);
  return rec;
}

}  // namespace nashfl
