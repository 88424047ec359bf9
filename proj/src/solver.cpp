#include "nashfl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

namespace nashfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Distinct sorted locations with multiplicities; all welfare sums in the
/// solver run over groups so co-located agents cost one term.
struct Groups {
  std::vector<double> loc;
  std::vector<int> mult;

  explicit Groups(ArrayRef sorted) {
    loc.reserve(static_cast<std::size_t>(sorted.size()));
    mult.reserve(static_cast<std::size_t>(sorted.size()));
    for (Index i = 0; i < sorted.size(); ++i) {
      if (!loc.empty() && sorted[i] == loc.back()) {
        ++mult.back();
      } else {
        loc.push_back(sorted[i]);
        mult.push_back(1);
      }
    }
  }

  std::size_t count() const { return loc.size(); }
};

/// S(y) with agents exactly at y counted on the left, i.e. the right-hand
/// derivative of log Nash at agent locations. Evaluates to +/-inf at a
/// singular endpoint (y in {0,1} with agents at the opposite end), which is
/// exactly the sign that steers the optimum inward, so no special-casing.
double derivative(const Groups& g, double y) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.count(); ++i) {
    const double x = g.loc[i];
    s += (x <= y) ? -g.mult[i] / (1.0 - y + x) : g.mult[i] / (1.0 + y - x);
  }
  return s;
}

double log_nash_grouped(const Groups& g, double y) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.count(); ++i) {
    s += g.mult[i] * std::log(1.0 - std::abs(y - g.loc[i]));
  }
  return s;
}

FacilityPlacement bisect_segment(const Groups& g, double lo, double hi, const SolveConfig& cfg) {
  // Invariant: S > 0 just right of lo, S < 0 just left of hi; endpoints are
  // never evaluated (they may be singular or carry a derivative jump).
  const double target = cfg.eps_loc * 0.25;
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    const double half = 0.5 * (hi - lo);
    if (half <= target) break;
    const double mid = lo + half;
    if (mid <= lo || mid >= hi) break;  // bracket exhausted in doubles
    const double s = derivative(g, mid);
    if (s > 0.0) {
      lo = mid;
    } else if (s < 0.0) {
      hi = mid;
    } else {
      return {mid, 0.0};
    }
  }
  const double half = 0.5 * (hi - lo);
  if (half > cfg.eps_loc) {
    std::ostringstream msg;
    msg << "bisection did not reach eps_loc=" << cfg.eps_loc << " within " << cfg.max_iter
        << " iterations; best bracket [" << lo << ", " << hi << "]";
    throw ConvergenceError(msg.str(), lo, hi);
  }
  return {lo + half, half};
}

}  // namespace

FacilityPlacement nash_fl_numeric(const LocationProfile& profile, const SolveConfig& cfg) {
  cfg.validate();
  const Groups g(profile.locations());
  const std::size_t m = g.count();
  if (m == 1) return {g.loc[0], 0.0};

  // Right- and left-hand derivatives of log Nash at each distinct location.
  // The chain rd_0 > ld_1 > rd_1 > ... > ld_{m-1} is strictly decreasing, so
  // scanning it locates the unique sign change: either pinned at a location
  // (ld >= 0 >= rd) or interior to a segment (rd_j > 0 > ld_{j+1}).
  std::vector<double> rd(m), ld(m);
  for (std::size_t j = 0; j < m; ++j) {
    rd[j] = derivative(g, g.loc[j]);
    ld[j] = rd[j] + 2.0 * g.mult[j];
  }

  if (rd[0] <= 0.0) return {g.loc[0], 0.0};
  if (ld[m - 1] >= 0.0) return {g.loc[m - 1], 0.0};
  for (std::size_t j = 1; j + 1 < m; ++j) {
    if (ld[j] >= 0.0 && rd[j] <= 0.0) return {g.loc[j], 0.0};
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (rd[j] > 0.0 && ld[j + 1] < 0.0) {
      return bisect_segment(g, g.loc[j], g.loc[j + 1], cfg);
    }
  }
  // Unreachable for a strictly decreasing derivative chain.
  throw std::logic_error("derivative sign chain admitted no optimum segment");
}

FacilityPlacement nash_fl_grid_oracle(const LocationProfile& profile, const SolveConfig& cfg) {
  cfg.validate();
  const Groups g(profile.locations());
  const double lo = g.loc.front();
  const double hi = g.loc.back();
  if (hi == lo) return {lo, 0.0};

  const auto steps = static_cast<long>(std::ceil((hi - lo) / cfg.grid_resolution));
  double best_y = lo;
  double best_v = -kInf;
  auto consider = [&](double y) {
    const double v = log_nash_grouped(g, y);
    if (v > best_v) {
      best_v = v;
      best_y = y;
    }
  };
  for (long i = 0; i <= steps; ++i) {
    consider(lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(steps)));
  }
  for (const double x : g.loc) consider(x);
  return {best_y, cfg.grid_resolution};
}

ThreeAgentCase ThreeAgentCase::classify(double x1, double x2, double x3) {
  detail::check_unit_interval(x1, "x1");
  detail::check_unit_interval(x2, "x2");
  detail::check_unit_interval(x3, "x3");
  if (!(x1 <= x2 && x2 <= x3)) throw std::domain_error("three-agent case requires x1 <= x2 <= x3");

  ThreeAgentCase out;
  out.x1 = x1;
  out.x2 = x2;
  out.x3 = x3;
  out.c = 1.0 - x2 * x2 + x1 * x2 + x2 * x3 - x1 * x3;
  out.alpha = x1 + x2 + x3;
  out.beta = 1.0 - x1 * x2 - x2 * x3 - x1 * x3;

  const bool left_ok = 2.0 * x1 - 2.0 * x2 + out.c >= 0.0;
  const bool right_ok = 2.0 * x2 - 2.0 * x3 + out.c >= 0.0;
  if (left_ok && right_ok) {
    out.branch = Branch::AtX2;
  } else if (left_ok) {
    out.branch = Branch::RightOfX2;
  } else if (right_ok) {
    out.branch = Branch::LeftOfX2;
  } else {
    throw std::logic_error("three-agent classification hit the impossible both-negative case");
  }
  return out;
}

FacilityPlacement nash_fl_three_closed_form(double x1, double x2, double x3) {
  ThreeAgentCase tc;
  try {
    tc = ThreeAgentCase::classify(x1, x2, x3);
  } catch (const std::logic_error& e) {
    std::cerr << "nash_fl_three_closed_form: " << e.what() << "; falling back to bisection\n";
    return nash_fl_numeric(LocationProfile{x1, x2, x3});
  }

  double y = x2;
  switch (tc.branch) {
    case ThreeAgentCase::Branch::AtX2:
      y = x2;
      break;
    case ThreeAgentCase::Branch::RightOfX2: {
      const double a = 1.0 + tc.alpha;
      const double radicand = std::max(0.0, a * a - 3.0 * (2.0 * x3 - tc.beta));
      y = (a - std::sqrt(radicand)) / 3.0;
      break;
    }
    case ThreeAgentCase::Branch::LeftOfX2: {
      const double a = -1.0 + tc.alpha;
      const double radicand = std::max(0.0, a * a + 3.0 * (2.0 * x1 + tc.beta));
      y = (a + std::sqrt(radicand)) / 3.0;
      break;
    }
  }
  return {std::clamp(y, x1, x3), 0.0};
}

FacilityPlacement nash_fl_two_location(int k, int n, double x) {
  if (n < 1 || k < 1 || k > n) throw std::domain_error("two-location form requires 1 <= k <= n");
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("two-location form requires x in (0,1]");
  const double kd = k;
  const double nd = n;
  if (kd * (2.0 - x) >= nd) return {x, 0.0};
  if (kd * (2.0 - x) <= nd * (1.0 - x)) return {0.0, 0.0};
  const double y = x - 1.0 + (2.0 * kd - kd * x) / nd;
  return {std::clamp(y, 0.0, x), 0.0};
}

double nash_value_error_bound(const LocationProfile& profile, const FacilityPlacement& placement) {
  if (placement.loc_error == 0.0) return 0.0;
  const Groups g(profile.locations());
  const double slope = std::abs(derivative(g, placement.y));
  return std::exp(log_nash_grouped(g, placement.y)) * slope * placement.loc_error;
}

FacilityPlacement nash_fl(const LocationProfile& profile, const SolveConfig& cfg) {
  cfg.validate();
  const Array& xs = profile.locations();
  const Index n = xs.size();
  if (n == 1 || xs[0] == xs[n - 1]) return {xs[0], 0.0};
  if (n == 2) return {0.5 * (xs[0] + xs[1]), 0.0};
  if (n == 3) return nash_fl_three_closed_form(xs[0], xs[1], xs[2]);

  const Groups g(xs);
  if (g.count() == 2) {
    // Translate so the left group sits at 0 (location invariance), apply
    // the two-location form, translate back.
    const double shift = g.loc[0];
    FacilityPlacement p = nash_fl_two_location(g.mult[1], static_cast<int>(n), g.loc[1] - shift);
    p.y = std::clamp(p.y + shift, xs[0], xs[n - 1]);
    return p;
  }
  return nash_fl_numeric(profile, cfg);
}

}  // namespace nashfl
