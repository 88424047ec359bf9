#include "nashfl/experiments.hpp"
#include "nashfl/fairness.hpp"
#include "nashfl/io.hpp"
#include "nashfl/mechanisms.hpp"
#include "nashfl/model.hpp"
#include "nashfl/solver.hpp"
#include "nashfl/strategy.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nashfl::io::Json;

/// Location tolerance precedence: --eps flag > NASHFL_EPS env > default.
nashfl::SolveConfig make_config(const std::optional<double>& eps_flag) {
  nashfl::SolveConfig cfg;
  if (eps_flag) {
    cfg.eps_loc = *eps_flag;
  } else if (const char* env = std::getenv("NASHFL_EPS")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw std::domain_error(std::string("NASHFL_EPS is not a positive number: '") + env + "'");
    }
    cfg.eps_loc = v;
  }
  cfg.validate();
  return cfg;
}

std::vector<double> original_order(const nashfl::LocationProfile& profile) {
  const nashfl::Array xs = profile.original();
  return {xs.data(), xs.data() + xs.size()};
}

int run_solve(const std::string& path, const std::vector<std::string>& mechanism_names,
              const std::optional<double>& eps, const std::string& format) {
  const nashfl::SolveConfig cfg = make_config(eps);
  const nashfl::LocationProfile profile = nashfl::io::read_profile_file(path);

  std::vector<nashfl::MechanismId> ids;
  if (mechanism_names.empty()) {
    ids = {nashfl::MechanismId::Mid, nashfl::MechanismId::Med, nashfl::MechanismId::MidOrNearest,
           nashfl::MechanismId::NashFL};
  } else {
    for (const std::string& name : mechanism_names) ids.push_back(nashfl::parse_mechanism(name));
  }

  if (format == "csv") {
    std::cout << "mechanism,y,loc_error,nash_error_bound,usw,esw,nash,log_nash\n";
    for (nashfl::MechanismId id : ids) {
      const auto placement = nashfl::apply_mechanism(id, profile, cfg);
      const auto report = nashfl::welfare_report(placement.y, profile);
      std::cout << nashfl::to_string(id) << ',' << nashfl::io::format_number(placement.y) << ','
                << nashfl::io::format_number(placement.loc_error) << ','
                << nashfl::io::format_number(nashfl::nash_value_error_bound(profile, placement))
                << ',' << nashfl::io::format_number(report.usw) << ','
                << nashfl::io::format_number(report.esw) << ','
                << nashfl::io::format_number(report.nash) << ','
                << nashfl::io::format_number(report.log_nash) << '\n';
    }
    return 0;
  }

  Json out;
  out["profile"] = nashfl::io::profile_json(original_order(profile));
  out["eps"] = nashfl::io::round12(cfg.eps_loc);
  Json results = Json::array();
  for (nashfl::MechanismId id : ids) {
    const auto placement = nashfl::apply_mechanism(id, profile, cfg);
    Json entry;
    entry["mechanism"] = nashfl::to_string(id);
    entry["y"] = nashfl::io::round12(placement.y);
    entry["loc_error"] = nashfl::io::round12(placement.loc_error);
    entry["nash_error_bound"] =
        nashfl::io::round12(nashfl::nash_value_error_bound(profile, placement));
    entry["welfare"] = nashfl::io::welfare_json(nashfl::welfare_report(placement.y, profile));
    results.push_back(std::move(entry));
  }
  out["results"] = std::move(results);
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_ratios(const std::string& mechanism, const std::string& objective, int n, int samples,
               std::uint64_t seed, const std::optional<double>& eps, const std::string& format) {
  const nashfl::SolveConfig cfg = make_config(eps);
  const nashfl::MechanismId id = nashfl::parse_mechanism(mechanism);
  const nashfl::Objective obj = nashfl::parse_objective(objective);

  const nashfl::WorstCase worst = nashfl::empirical_worst_case(id, obj, n, samples, seed, cfg);
  const nashfl::CellBound bound = nashfl::cell_bound(id, obj, n);
  const bool pass = nashfl::bound_satisfied(worst.record, bound);

  if (format == "csv") {
    std::cout << nashfl::io::ratio_csv_header() << '\n'
              << nashfl::io::ratio_csv_row(worst, bound, n, pass) << '\n';
  } else {
    std::cout << nashfl::io::ratio_json(worst, bound, n, pass).dump(2) << '\n';
  }
  return 0;
}

int run_table1(int n, int samples, std::uint64_t seed, const std::optional<double>& eps,
               const std::string& format) {
  const nashfl::SolveConfig cfg = make_config(eps);
  const nashfl::Table1 table = nashfl::table1_report(n, samples, seed, cfg);
  if (format == "csv") {
    std::cout << nashfl::io::table1_csv(table);
  } else {
    std::cout << nashfl::io::table1_json(table).dump(2) << '\n';
  }
  return 0;
}

int run_audit_fairness(const std::string& mechanism, const std::string& path,
                       const std::string& notion, double coalesce_tol,
                       const std::optional<double>& eps, const std::string& format) {
  const nashfl::SolveConfig cfg = make_config(eps);
  const nashfl::MechanismId id = nashfl::parse_mechanism(mechanism);
  nashfl::LocationProfile profile = nashfl::io::read_profile_file(path);
  if (coalesce_tol > 0.0) profile = nashfl::coalesce_locations(profile, coalesce_tol);
  const std::vector<double> original = original_order(profile);

  const auto findings = notion == "ifs" ? nashfl::audit_ifs(id, profile, cfg)
                                        : nashfl::audit_ufs(id, profile, cfg);
  if (format == "csv") {
    std::cout << nashfl::io::fairness_csv_header() << '\n';
    for (const auto& f : findings) std::cout << nashfl::io::fairness_csv_row(f, original) << '\n';
  } else {
    Json arr = Json::array();
    for (const auto& f : findings) arr.push_back(nashfl::io::fairness_json(f, original));
    std::cout << arr.dump(2) << '\n';
  }
  return 0;
}

int run_manipulate(const std::string& mechanism, const std::string& path,
                   const std::string& agents, double grid, const std::optional<double>& eps,
                   const std::string& format) {
  const nashfl::SolveConfig cfg = make_config(eps);
  const nashfl::MechanismId id = nashfl::parse_mechanism(mechanism);
  const nashfl::LocationProfile profile = nashfl::io::read_profile_file(path);

  std::vector<nashfl::Index> targets;
  if (agents == "all") {
    for (nashfl::Index i = 0; i < profile.size(); ++i) targets.push_back(i);
  } else {
    std::size_t consumed = 0;
    long idx = -1;
    try {
      idx = std::stol(agents, &consumed);
    } catch (const std::exception&) {
      throw std::domain_error("--agents expects 'all' or a 0-based agent index");
    }
    if (consumed != agents.size() || idx < 0 || idx >= profile.size()) {
      throw std::domain_error("--agents index out of range: '" + agents + "'");
    }
    targets.push_back(static_cast<nashfl::Index>(idx));
  }

  std::vector<nashfl::ManipulationFinding> findings;
  for (nashfl::Index agent : targets) {
    findings.push_back(nashfl::best_response(id, profile, agent, cfg, grid));
  }

  if (format == "csv") {
    std::cout << nashfl::io::manipulation_csv_header() << '\n';
    for (const auto& f : findings) std::cout << nashfl::io::manipulation_csv_row(f) << '\n';
  } else {
    Json arr = Json::array();
    for (const auto& f : findings) arr.push_back(nashfl::io::manipulation_json(f));
    std::cout << arr.dump(2) << '\n';
  }
  return 0;
}

int run_families(const std::string& name, int n, const std::optional<double>& parameter) {
  const nashfl::LocationProfile profile =
      nashfl::adversarial_profiles(name, n, parameter ? std::optional<double>(*parameter)
                                                      : std::nullopt);
  const nashfl::Array& xs = profile.locations();
  std::cout << nashfl::io::profile_json({xs.data(), xs.data() + xs.size()}).dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash-welfare facility location on the unit interval"};
  app.require_subcommand(1);

  std::optional<double> eps;
  std::string format = "json";
  std::string profile_path;
  std::string mechanism;
  std::string objective = "nash";
  std::string notion = "ufs";
  std::string agents = "all";
  std::string family;
  std::vector<std::string> mechanisms;
  std::optional<double> family_param;
  double grid = nashfl::kManipulationGridStep;
  int n = 0;
  int samples = 1000;
  std::uint64_t seed = 0;

  auto* solve = app.add_subcommand("solve", "Placements and welfare for each mechanism");
  solve->add_option("--profile", profile_path, "Profile file (JSON array or one number per line)")
      ->required();
  solve->add_option("--mechanisms", mechanisms, "Comma-separated mechanism list")->delimiter(',');
  solve->add_option("--eps", eps, "Location tolerance for the NashFL solver");
  solve->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* ratios = app.add_subcommand("ratios", "Empirical worst-case approximation ratio");
  ratios->add_option("--mechanism", mechanism, "mid, med, midornearest or nashfl")->required();
  ratios->add_option("--objective", objective, "esw, usw or nash")->required();
  ratios->add_option("--n", n, "Profile size")->required()->check(CLI::PositiveNumber);
  ratios->add_option("--samples", samples, "Random profiles to draw")->check(CLI::PositiveNumber);
  ratios->add_option("--seed", seed, "RNG seed");
  ratios->add_option("--eps", eps, "Location tolerance for the NashFL solver");
  std::string ratios_format = "csv";
  ratios->add_option("--format", ratios_format, "json or csv (default csv)")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* table1 = app.add_subcommand("table1", "Full mechanism x objective ratio matrix");
  table1->add_option("--n", n, "Profile size")->required()->check(CLI::PositiveNumber);
  table1->add_option("--samples", samples, "Random profiles per cell")->check(CLI::PositiveNumber);
  table1->add_option("--seed", seed, "RNG seed");
  table1->add_option("--eps", eps, "Location tolerance for the NashFL solver");
  table1->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* audit = app.add_subcommand("audit-fairness", "IFS/UFS audit for a mechanism");
  double coalesce_tol = 0.0;
  audit->add_option("--mechanism", mechanism, "mid, med, midornearest or nashfl")->required();
  audit->add_option("--profile", profile_path, "Profile file")->required();
  audit->add_option("--notion", notion, "ifs or ufs")->check(CLI::IsMember({"ifs", "ufs"}));
  audit->add_option("--coalesce-tol", coalesce_tol,
                    "Merge locations closer than this before auditing (default off)")
      ->check(CLI::NonNegativeNumber);
  audit->add_option("--eps", eps, "Location tolerance for the NashFL solver");
  audit->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* manipulate = app.add_subcommand("manipulate", "Best-response search per agent");
  manipulate->add_option("--mechanism", mechanism, "mid, med, midornearest or nashfl")->required();
  manipulate->add_option("--profile", profile_path, "Profile file")->required();
  manipulate->add_option("--agents", agents, "'all' or a 0-based agent index");
  manipulate->add_option("--grid", grid, "Misreport scan step")->check(CLI::PositiveNumber);
  manipulate->add_option("--eps", eps, "Location tolerance for the NashFL solver");
  manipulate->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* families = app.add_subcommand("families", "Print an adversarial profile");
  families->add_option("--name", family, "Family name")->required();
  families->add_option("--n", n, "Family size argument (k for sandwich/sp_impossibility_demo)")
      ->required()
      ->check(CLI::PositiveNumber);
  families->add_option("--param", family_param, "Optional family parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(profile_path, mechanisms, eps, format);
    if (ratios->parsed())
      return run_ratios(mechanism, objective, n, samples, seed, eps, ratios_format);
    if (table1->parsed()) return run_table1(n, samples, seed, eps, format);
    if (audit->parsed())
      return run_audit_fairness(mechanism, profile_path, notion, coalesce_tol, eps, format);
    if (manipulate->parsed())
      return run_manipulate(mechanism, profile_path, agents, grid, eps, format);
    if (families->parsed()) return run_families(family, n, family_param);
  } catch (const nashfl::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
