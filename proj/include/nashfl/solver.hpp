#pragma once

#include "nashfl/model.hpp"

namespace nashfl {

/// Classification data for the three-agent closed form. With
///   c = 1 - x2^2 + x1*x2 + x2*x3 - x1*x3
/// the optimum sits at x2 when both 2x1-2x2+c and 2x2-2x3+c are
/// non-negative, right of x2 when only the first is, left of x2 when only
/// the second is. Both negative is provably impossible (it would require
/// x2-x1 and x3-x2 each to exceed c/2 >= 1/2 while summing to at most 1).
struct ThreeAgentCase {
  enum class Branch { AtX2, RightOfX2, LeftOfX2 };

  double x1 = 0.0, x2 = 0.0, x3 = 0.0;
  double c = 0.0;      ///< 1 - x2^2 + x1*x2 + x2*x3 - x1*x3
  double alpha = 0.0;  ///< x1 + x2 + x3
  double beta = 0.0;   ///< 1 - x1*x2 - x2*x3 - x1*x3
  Branch branch = Branch::AtX2;

  /// Requires x1 <= x2 <= x3, all in [0,1]. Throws std::logic_error on the
  /// impossible both-negative sign pattern.
  static ThreeAgentCase classify(double x1, double x2, double x3);
};

/// Certified-accuracy Nash-welfare maximizer: bisects on the sign of
/// S(y) = d(log Nash)/dy over [x1, xn]. S is strictly decreasing with a
/// downward jump of 2m at every location shared by m agents, so the sign
/// change is unique; when it is pinned to an agent location the solver
/// returns that point exactly with loc_error 0, otherwise it returns the
/// bracket midpoint with loc_error = half the final bracket (<= eps_loc).
/// Throws ConvergenceError if max_iter runs out first.
FacilityPlacement nash_fl_numeric(const LocationProfile& profile, const SolveConfig& cfg = {});

/// Brute-force oracle: evaluates log-Nash on a uniform grid of step
/// cfg.grid_resolution over [x1, xn] plus every agent location, and returns
/// the argmax with loc_error = grid_resolution. Independent of the
/// bisection and closed-form paths; used as ground truth in tests.
FacilityPlacement nash_fl_grid_oracle(const LocationProfile& profile, const SolveConfig& cfg = {});

/// Exact three-agent optimum via the cubic's stationary points.
/// Falls back to nash_fl_numeric (with a stderr diagnostic) if
/// classification ever hits the impossible sign pattern.
FacilityPlacement nash_fl_three_closed_form(double x1, double x2, double x3);

/// Exact optimum for k agents at x in (0,1] and n-k agents at 0:
/// x when k/n >= 1/(2-x), 0 when k/n <= (1-x)/(2-x),
/// otherwise x - 1 + (2k - kx)/n.
FacilityPlacement nash_fl_two_location(int k, int n, double x);

/// Dispatcher: all-equal and n = 1 return the common location; n = 2 the
/// midpoint; n = 3 the closed form; profiles with exactly two distinct
/// locations the translated two-location form; everything else the
/// bisection solver.
FacilityPlacement nash_fl(const LocationProfile& profile, const SolveConfig& cfg = {});

/// First-order bound on the welfare cost of the certified location error:
/// |Nash(y) - Nash(y*)| <~ Nash(y) * |S(y)| * loc_error, with the slope
/// estimated at the returned point. 0 for exact placements.
double nash_value_error_bound(const LocationProfile& profile, const FacilityPlacement& placement);

}  // namespace nashfl
