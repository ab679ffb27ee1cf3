#pragma once

// Closed-form minimax solution of the martingale-demand model: optimal
// order-up-to targets, piecewise-linear cost-to-go functions, the worst-case
// conditional demand measure, and the policy itself.
//
// Throughout, `s` is the number of periods remaining.  All functions are
// exact over rationals and pure; the threshold table is extended lazily.

#include "rnv/model.hpp"
#include "rnv/thresholds.hpp"

namespace rnv {

struct PolicyReport {
  Rational chi;                // optimal order-up-to target at the root
  Rational opt;                // minimax cost when x0 <= chi
  Rational value_at_x0;        // minimax cost from the given x0
  Rational first_order_level;  // max(x0, chi)
};

// Band indices and breakpoints that organize the shape of the one-period
// outcome cost in the demand argument (used by the curvature property
// tests).  For level s >= 2 and a fixed post-order level x:
//  - the outcome cost is convex in d below crossing_band_edge,
//  - convex within every demand band,
//  - concave above demand_band_edge.
struct RegionIndex {
  int demand_band = 0;         // band of x among demand breakpoints at level s
  int stock_band = 0;          // band of x among stock breakpoints at level s
  Rational crossing;           // smallest d with order_up_to(s, d) >= x - d
  int crossing_band = 0;       // demand band of `crossing` at level s
  Rational stock_band_edge;    // demand breakpoint at x's stock band (level s-1 index)
  Rational crossing_band_edge; // demand breakpoint at the crossing's band (level s-1 index)
  Rational demand_band_edge;   // demand breakpoint at x's demand band (level s-1 index)
};

class ClosedForm {
 public:
  explicit ClosedForm(ProblemInstance inst);

  const ProblemInstance& instance() const { return inst_; }
  const ThresholdTable& thresholds() const { return tbl_; }

  // Optimal order-up-to target with s periods remaining after observing
  // demand d.  Monotone nondecreasing in d; 0 at d = 0; cap at d = cap.
  Rational order_up_to(int s, const Rational& d) const;

  // Worst-case expected remaining cost after ordering up to x, when the
  // conditional mean demand is `mean`.
  Rational post_order_cost(int s, const Rational& x, const Rational& mean) const;

  // Remaining cost after demand d hits pre-demand level x: evaluates
  // post_order_cost at max(order_up_to(s, d), x - d).
  Rational post_demand_cost(int s, const Rational& x, const Rational& d) const;

  // Same quantity through the explicit piecewise definition (quadratic
  // carry pieces below the crossing demand, linear reorder pieces above).
  // Must agree exactly with post_demand_cost everywhere.
  Rational post_demand_cost_piecewise(int s, const Rational& x, const Rational& d) const;

  // This period's cost plus the optimal continuation when the realized
  // demand is d.  Defined for s >= 2 (at s = 1 the integrand is the stage
  // cost alone); rejects smaller s.
  Rational outcome_cost(int s, const Rational& x, const Rational& d) const;

  // Smallest demand at which the reorder target covers the carryover stock:
  // inf { d >= 0 : order_up_to(s, d) >= x - d }.  Always <= x; 0 iff x = 0.
  Rational crossing_demand(int s, const Rational& x) const;

  // The two-point (possibly degenerate) conditional demand measure that
  // attains the inner supremum.  Mean is exactly `mean`; support lies on
  // {0} u {demand breakpoints} u {cap}.
  DiscreteMeasure worst_case_measure(int s, const Rational& x, const Rational& mean) const;

  // Order-up-to decision with s periods remaining: clamps the pre-order
  // level y to [0, cap] and raises it to order_up_to(s, prev_d).
  Rational policy_order_level(int s, const Rational& y, const Rational& prev_d) const;

  // Region constants for a fixed level x at s >= 2.
  RegionIndex region(int s, const Rational& x) const;

  // Root evaluation: chi, minimax value, and the value from the given x0.
  PolicyReport solve() const;

 private:
  // Linear piece active when the order level sits below the reorder target.
  Rational understock_piece(int s, int j, const Rational& x, const Rational& mean) const;
  // Linear piece active when the order level sits at or above the target.
  Rational overstock_piece(int s, int j, const Rational& x, const Rational& mean) const;
  // Quadratic piece of the post-demand cost for demand below the crossing.
  Rational carry_piece(int s, int j, const Rational& x, const Rational& d) const;
  // Linear piece of the post-demand cost for demand at or above the crossing.
  Rational reorder_piece(int s, int j, const Rational& d) const;

  void check_range(const Rational& v, const char* what) const;

  ProblemInstance inst_;
  mutable ThresholdTable tbl_;
};

}  // namespace rnv
