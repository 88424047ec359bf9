#include "nashfl/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nashfl {

namespace detail {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << what << " must lie in [0,1], got " << v;
    throw std::domain_error(msg.str());
  }
}

}  // namespace detail

LocationProfile::LocationProfile(Array locations) : sorted_(std::move(locations)) {
  const Index n = sorted_.size();
  if (n < 1) throw std::domain_error("profile must contain at least one agent");
  for (Index i = 0; i < n; ++i) {
    if (!(sorted_[i] >= 0.0 && sorted_[i] <= 1.0)) {
      std::ostringstream msg;
      msg << "location at index " << i << " must lie in [0,1], got " << sorted_[i];
      throw std::domain_error(msg.str());
    }
  }
  order_.resize(static_cast<std::size_t>(n));
  std::iota(order_.begin(), order_.end(), Index{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](Index a, Index b) { return sorted_[a] < sorted_[b]; });
  Array sorted(n);
  for (Index rank = 0; rank < n; ++rank) sorted[rank] = sorted_[order_[static_cast<std::size_t>(rank)]];
  sorted_ = std::move(sorted);
}

LocationProfile::LocationProfile(std::initializer_list<double> locations)
    : LocationProfile(Eigen::Map<const Array>(locations.begin(),
                                              static_cast<Index>(locations.size()))) {}

double LocationProfile::original_location(Index original_index) const {
  for (Index rank = 0; rank < size(); ++rank) {
    if (order_[static_cast<std::size_t>(rank)] == original_index) return sorted_[rank];
  }
  throw std::domain_error("agent index out of range");
}

Array LocationProfile::original() const {
  Array out(size());
  for (Index rank = 0; rank < size(); ++rank) out[order_[static_cast<std::size_t>(rank)]] = sorted_[rank];
  return out;
}

void SolveConfig::validate() const {
  if (!(eps_loc > 0.0)) throw std::domain_error("eps_loc must be positive");
  if (max_iter < 1) throw std::domain_error("max_iter must be at least 1");
  if (!(grid_resolution > 0.0)) throw std::domain_error("grid_resolution must be positive");
}

double utility(double y, double x) {
  detail::check_unit_interval(y, "facility location y");
  detail::check_unit_interval(x, "agent location x");
  return 1.0 - std::abs(y - x);
}

double usw(double y, ArrayRef locations) {
  detail::check_unit_interval(y, "facility location y");
  return (1.0 - (y - locations).abs()).sum();
}

double esw(double y, ArrayRef locations) {
  detail::check_unit_interval(y, "facility location y");
  return (1.0 - (y - locations).abs()).minCoeff();
}

double log_nash(double y, ArrayRef locations) {
  detail::check_unit_interval(y, "facility location y");
  // log(0) = -inf is the intended sentinel for a zero utility.
  return (1.0 - (y - locations).abs()).log().sum();
}

double nash_welfare(double y, ArrayRef locations) { return std::exp(log_nash(y, locations)); }

double log_nash_derivative(double y, ArrayRef locations) {
  detail::check_unit_interval(y, "facility location y");
  if ((1.0 - (y - locations).abs()).minCoeff() <= 0.0) {
    throw SingularPointError("log-Nash derivative undefined: an agent has zero utility at y");
  }
  return (locations <= y)
      .select(-1.0 / (1.0 - y + locations), 1.0 / (1.0 + y - locations))
      .sum();
}

double usw(double y, const LocationProfile& profile) { return usw(y, profile.locations()); }
double esw(double y, const LocationProfile& profile) { return esw(y, profile.locations()); }
double nash_welfare(double y, const LocationProfile& profile) {
  return nash_welfare(y, profile.locations());
}
double log_nash(double y, const LocationProfile& profile) { return log_nash(y, profile.locations()); }
double log_nash_derivative(double y, const LocationProfile& profile) {
  return log_nash_derivative(y, profile.locations());
}

WelfareReport welfare_report(double y, const LocationProfile& profile) {
  WelfareReport report;
  report.usw = usw(y, profile);
  report.esw = esw(y, profile);
  report.log_nash = log_nash(y, profile);
  report.nash = std::exp(report.log_nash);
  return report;
}

}  // namespace nashfl
