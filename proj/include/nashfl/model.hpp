#pragma once

#include <Eigen/Core>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashfl {

using Array = Eigen::ArrayXd;
using ArrayRef = Eigen::Ref<const Eigen::ArrayXd>;
using Index = Eigen::Index;

/// Raised when a welfare derivative is requested at a point where some
/// agent's utility is exactly zero (only possible at y in {0,1} with an
/// agent at the opposite endpoint).
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when the bisection solver runs out of iterations before the
/// bracket reaches the requested accuracy. Carries the best bracket found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
  double bracket_lo;
  double bracket_hi;
};

/// Agent positions on the unit interval, kept sorted ascending. Construction
/// from unsorted input sorts and remembers the permutation back to the
/// original agent order, since all closed forms assume sorted locations.
class LocationProfile {
 public:
  /// Validates n >= 1 and every location in [0,1]; sorts ascending.
  explicit LocationProfile(Array locations);
  LocationProfile(std::initializer_list<double> locations);

  Index size() const { return sorted_.size(); }
  const Array& locations() const { return sorted_; }

  double operator[](Index rank) const { return sorted_[rank]; }
  double front() const { return sorted_[0]; }
  double back() const { return sorted_[sorted_.size() - 1]; }

  /// sort_order()[rank] is the original index of the agent now at `rank`.
  const std::vector<Index>& sort_order() const { return order_; }

  /// Location of agent `original_index` as given at construction.
  double original_location(Index original_index) const;

  /// Locations in the original (pre-sort) agent order.
  Array original() const;

 private:
  Array sorted_;
  std::vector<Index> order_;
};

/// A facility position plus the solver's certified bound on |y - y*|.
/// Closed forms and non-optimizing mechanisms report loc_error = 0.
struct FacilityPlacement {
  double y = 0.0;
  double loc_error = 0.0;
};

/// All three welfare figures for one (placement, profile) pair. `log_nash`
/// is -infinity exactly when some utility is zero; `nash == exp(log_nash)`
/// otherwise (it may still underflow to 0 for large n).
struct WelfareReport {
  double usw = 0.0;
  double esw = 0.0;
  double nash = 0.0;
  double log_nash = 0.0;

  bool nash_is_zero() const { return log_nash == -std::numeric_limits<double>::infinity(); }
};

/// Solver knobs. eps_loc is the certified location accuracy of the numeric
/// path; grid_resolution is the step of the brute-force oracle.
struct SolveConfig {
  double eps_loc = 1e-9;
  int max_iter = 200;
  double grid_resolution = 1e-5;

  void validate() const;
};

/// u(y, x) = 1 - |y - x|, both arguments in [0,1].
double utility(double y, double x);

/// Sum of utilities at y; in [0, n].
double usw(double y, const LocationProfile& profile);
double usw(double y, ArrayRef locations);

/// Minimum utility at y; in [0, 1].
double esw(double y, const LocationProfile& profile);
double esw(double y, ArrayRef locations);

/// Product of utilities at y, accumulated in log space.
double nash_welfare(double y, const LocationProfile& profile);
double nash_welfare(double y, ArrayRef locations);

/// Sum of log utilities at y; -infinity when some utility is zero.
double log_nash(double y, const LocationProfile& profile);
double log_nash(double y, ArrayRef locations);

/// d(log Nash)/dy at y:
///   S(y) = -sum_{x_i <= y} 1/(1-y+x_i) + sum_{x_i > y} 1/(1+y-x_i).
/// Agents exactly at y count on the left, which makes S(y) the right-hand
/// derivative at agent locations. Throws SingularPointError when some
/// utility at y is zero.
double log_nash_derivative(double y, const LocationProfile& profile);
double log_nash_derivative(double y, ArrayRef locations);

/// Bundles usw/esw/nash/log-nash consistently.
WelfareReport welfare_report(double y, const LocationProfile& profile);

namespace detail {
/// Throws std::domain_error unless v in [0,1]. `what` names the argument.
void check_unit_interval(double v, const char* what);
}  // namespace detail

}  // namespace nashfl
