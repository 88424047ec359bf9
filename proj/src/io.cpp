#include "nashfl/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nashfl::io {

namespace {

std::string join_profile(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ';';
    out += format_number(xs[i]);
  }
  return out;
}

/// JSON value for a double: a 12-significant-digit number, or the strings
/// "inf"/"-inf" (null for NaN) since JSON has no non-finite literals.
Json number_or_sentinel(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round12(v);
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

LocationProfile parse_profile(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::domain_error("profile input is empty");

  std::vector<double> values;
  if (text[first] == '[') {
    Json parsed;
    try {
      parsed = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw std::domain_error(std::string("profile is not valid JSON: ") + e.what());
    }
    if (!parsed.is_array()) throw std::domain_error("profile JSON must be an array of numbers");
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      if (!parsed[i].is_number()) {
        throw std::domain_error("profile element " + std::to_string(i) + " is not a number");
      }
      const double v = parsed[i].get<double>();
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error("profile element " + std::to_string(i) +
                                " is outside [0,1]: " + format_number(v));
      }
      values.push_back(v);
    }
  } else {
    std::istringstream in(text);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
      std::size_t begin = line.find_first_not_of(" \t\r");
      if (begin == std::string::npos) continue;
      std::size_t end = line.find_last_not_of(" \t\r");
      const std::string token = line.substr(begin, end - begin + 1);
      std::size_t consumed = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &consumed);
      } catch (const std::exception&) {
        throw std::domain_error("profile line " + std::to_string(lineno) +
                                " is not a number: '" + token + "'");
      }
      if (consumed != token.size()) {
        throw std::domain_error("profile line " + std::to_string(lineno) +
                                " has trailing characters: '" + token + "'");
      }
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error("profile line " + std::to_string(lineno) +
                                " is outside [0,1]: " + format_number(v));
      }
      values.push_back(v);
    }
  }
  if (values.empty()) throw std::domain_error("profile contains no locations");
  return LocationProfile(Eigen::Map<const Array>(values.data(), static_cast<Index>(values.size())));
}

LocationProfile read_profile_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::domain_error("cannot open profile file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

Json profile_json(const std::vector<double>& locations) {
  Json arr = Json::array();
  for (double v : locations) arr.push_back(round12(v));
  return arr;
}

Json welfare_json(const WelfareReport& report) {
  Json j;
  j["usw"] = number_or_sentinel(report.usw);
  j["esw"] = number_or_sentinel(report.esw);
  j["nash"] = number_or_sentinel(report.nash);
  j["log_nash"] = number_or_sentinel(report.log_nash);
  return j;
}

Json fairness_json(const FairnessFinding& finding, const std::vector<double>& profile) {
  Json j;
  j["mechanism"] = to_string(finding.mechanism);
  j["profile"] = profile_json(profile);
  j["coalition_location"] = round12(finding.coalition.location);
  j["size"] = finding.coalition.size();
  j["members"] = finding.coalition.members;
  j["required"] = round12(finding.required);
  j["achieved"] = round12(finding.achieved);
  j["slack"] = round12(finding.slack);
  j["satisfied"] = finding.satisfied;
  return j;
}

std::string fairness_csv_header() {
  return "mechanism,coalition_location,size,required,achieved,slack,satisfied,profile";
}

std::string fairness_csv_row(const FairnessFinding& finding, const std::vector<double>& profile) {
  std::ostringstream row;
  row << to_string(finding.mechanism) << ',' << format_number(finding.coalition.location) << ','
      << finding.coalition.size() << ',' << format_number(finding.required) << ','
      << format_number(finding.achieved) << ',' << format_number(finding.slack) << ','
      << (finding.satisfied ? "true" : "false") << ',' << join_profile(profile);
  return row.str();
}

Json manipulation_json(const ManipulationFinding& finding) {
  Json j;
  j["mechanism"] = to_string(finding.mechanism);
  j["profile"] = profile_json(finding.profile);
  j["agent"] = finding.agent;
  j["true_location"] = round12(finding.true_location);
  j["best_report"] = round12(finding.best_report);
  j["truthful_utility"] = round12(finding.truthful_utility);
  j["manipulated_utility"] = round12(finding.manipulated_utility);
  j["gain"] = round12(finding.gain);
  return j;
}

std::string manipulation_csv_header() {
  return "mechanism,agent,true_location,best_report,truthful_utility,manipulated_utility,gain,"
         "profile";
}

std::string manipulation_csv_row(const ManipulationFinding& finding) {
  std::ostringstream row;
  row << to_string(finding.mechanism) << ',' << finding.agent << ','
      << format_number(finding.true_location) << ',' << format_number(finding.best_report) << ','
      << format_number(finding.truthful_utility) << ','
      << format_number(finding.manipulated_utility) << ',' << format_number(finding.gain) << ','
      << join_profile(finding.profile);
  return row.str();
}

Json ratio_json(const WorstCase& worst, const CellBound& bound, int n, bool pass) {
  const RatioRecord& rec = worst.record;
  Json j;
  j["mechanism"] = to_string(rec.mechanism);
  j["objective"] = to_string(rec.objective);
  j["n"] = n;
  j["ratio"] = rec.infinite() ? Json("inf") : number_or_sentinel(rec.ratio);
  j["optimal"] = number_or_sentinel(rec.optimal_value);
  j["achieved"] = number_or_sentinel(rec.achieved_value);
  if (rec.objective == Objective::Nash) {
    j["log_optimal"] = number_or_sentinel(rec.log_optimal);
    j["log_achieved"] = number_or_sentinel(rec.log_achieved);
  }
  j["witness_profile"] = profile_json(rec.profile);
  j["witness"] = worst.witness_label;
  j["theoretical_bound"] = number_or_sentinel(bound.upper);
  j["bound_label"] = bound.label;
  j["family_target"] = number_or_sentinel(bound.family_target);
  j["tight_family"] = bound.tight_family;
  j["pass"] = pass;
  return j;
}

std::string ratio_csv_header() {
  return "mechanism,objective,n,ratio,optimal,achieved,witness_profile,theoretical_bound,pass";
}

std::string ratio_csv_row(const WorstCase& worst, const CellBound& bound, int n, bool pass) {
  const RatioRecord& rec = worst.record;
  std::ostringstream row;
  row << to_string(rec.mechanism) << ',' << to_string(rec.objective) << ',' << n << ','
      << (rec.infinite() ? "inf" : format_number(rec.ratio)) << ','
      << format_number(rec.optimal_value) << ',' << format_number(rec.achieved_value) << ','
      << join_profile(rec.profile) << ',' << format_number(bound.upper) << ','
      << (pass ? "true" : "false");
  return row.str();
}

Json table1_json(const Table1& table) {
  Json j;
  j["n"] = table.n;
  j["samples"] = table.samples;
  j["seed"] = table.seed;
  Json cells = Json::array();
  for (const TableCell& cell : table.cells) {
    cells.push_back(ratio_json(cell.worst, cell.bound, table.n, cell.pass));
  }
  j["cells"] = cells;
  return j;
}

std::string table1_csv(const Table1& table) {
  std::ostringstream out;
  out << ratio_csv_header() << '\n';
  for (const TableCell& cell : table.cells) {
    out << ratio_csv_row(cell.worst, cell.bound, table.n, cell.pass) << '\n';
  }
  return out.str();
}

}  // namespace nashfl::io
