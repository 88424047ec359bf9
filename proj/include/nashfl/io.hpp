#pragma once

#include "nashfl/experiments.hpp"
#include "nashfl/fairness.hpp"
#include "nashfl/model.hpp"
#include "nashfl/strategy.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace nashfl::io {

using Json = nlohmann::ordered_json;

/// Parses a profile from text: a JSON array of numbers when the first
/// non-space character is '[', otherwise one number per line (CSV).
/// Malformed or out-of-range entries raise std::domain_error naming the
/// offending element index / line.
LocationProfile parse_profile(const std::string& text);

/// parse_profile over a file's contents; missing file raises domain_error.
LocationProfile read_profile_file(const std::string& path);

/// Floats are printed with 12 significant digits everywhere ("inf", "-inf",
/// "nan" for non-finite values) so that CSV and JSON renderings agree.
std::string format_number(double v);

/// The double closest to format_number(v), so JSON numbers carry exactly
/// the printed precision.
double round12(double v);

Json profile_json(const std::vector<double>& locations);

Json welfare_json(const WelfareReport& report);

Json fairness_json(const FairnessFinding& finding, const std::vector<double>& profile);
std::string fairness_csv_header();
std::string fairness_csv_row(const FairnessFinding& finding, const std::vector<double>& profile);

Json manipulation_json(const ManipulationFinding& finding);
std::string manipulation_csv_header();
std::string manipulation_csv_row(const ManipulationFinding& finding);

Json ratio_json(const WorstCase& worst, const CellBound& bound, int n, bool pass);
std::string ratio_csv_header();
std::string ratio_csv_row(const WorstCase& worst, const CellBound& bound, int n, bool pass);

Json table1_json(const Table1& table);
std::string table1_csv(const Table1& table);

}  // namespace nashfl::io
