#pragma once

// Brute-force verification oracle: grid dynamic programs for the martingale
// and independent demand models, with the inner supremum over mean-matching
// measures solved by an exact upper concave envelope.
//
// On the breakpoint-closure grid the martingale DP reproduces the closed
// form exactly; on coarser grids it is a lower bound (the adversary is
// restricted to grid-supported measures).

#include <utility>
#include <vector>

#include "rnv/model.hpp"

namespace rnv {

struct Grid {
  std::vector<Rational> demand_points;  // sorted, dedup'd, contains 0 and cap
  std::vector<Rational> order_points;   // sorted, dedup'd, within [0, cap]

  // Sorts, deduplicates, and checks the invariants above.
  static Grid make(std::vector<Rational> demand, std::vector<Rational> order,
                   const Rational& cap);
};

// Value and certificate of max E_Q[f(D)] over measures supported on the
// given points with the given mean: the bracketing upper-hull segment read
// as a two-point measure.
struct EnvelopeResult {
  Rational value;
  std::pair<Rational, Rational> left;     // (point, f-value)
  std::pair<Rational, Rational> right;    // (point, f-value)
  std::pair<Rational, Rational> weights;  // sum to 1; average of points = mean
};

// Upper concave envelope of a finite point set, built once and evaluated at
// many means.  Points must be sorted with strictly increasing abscissae.
class UpperHull {
 public:
  explicit UpperHull(std::vector<std::pair<Rational, Rational>> points);

  // Throws std::invalid_argument when mean is outside [min q, max q].
  EnvelopeResult at(const Rational& mean) const;

 private:
  std::vector<std::pair<Rational, Rational>> hull_;
};

EnvelopeResult upper_concave_envelope(std::vector<std::pair<Rational, Rational>> points,
                                      const Rational& mean);

// Stage tables of the martingale DP.  post_order[s-1] holds, for every
// order point z and conditional mean m, the envelope value of the stage
// integrand; best_cost gives the suffix minimum over feasible order points.
class DpTables {
 public:
  DpTables(std::vector<Rational> demand, std::vector<Rational> order,
           const Rational& root_mean, int horizon);

  const std::vector<Rational>& means() const { return means_; }
  const std::vector<Rational>& demand_points() const { return demand_; }
  const std::vector<Rational>& order_points() const { return order_; }
  int horizon() const { return horizon_; }

  const Rational& post_order(int s, std::size_t zi, std::size_t mi) const;
  // min over grid order points z >= y (every point feasible when y <= 0).
  const Rational& best_cost(int s, const Rational& y, std::size_t mi) const;

  std::size_t mean_index(const Rational& m) const;
  std::size_t demand_mean_index(std::size_t qi) const { return demand_mean_idx_[qi]; }

  void set_post_order(int s, std::size_t zi, std::size_t mi, Rational v);
  void seal_stage(int s);  // builds the suffix minima for stage s

 private:
  std::vector<Rational> demand_;
  std::vector<Rational> order_;
  std::vector<Rational> means_;  // demand points plus the root mean
  std::vector<std::size_t> demand_mean_idx_;
  int horizon_;
  std::vector<std::vector<Rational>> post_order_;  // [s-1][zi * means + mi]
  std::vector<std::vector<Rational>> suffix_min_;  // [s-1][mi * order + zi]
};

struct MartingaleDpResult {
  Rational value;
  DpTables tables;
};

// Recursion over (periods remaining, order level, previous demand = mean).
MartingaleDpResult solve_martingale_dp(const ProblemInstance& inst, const Grid& grid);

// Same recursion with the envelope always evaluated at the fixed mean and
// no demand coordinate in the state.
Rational solve_independent_dp(const ProblemInstance& inst, const Grid& grid);

// Grid on which the martingale DP is exact: demand breakpoints of all rows
// up to the horizon, plus the order-point set closed under subtracting
// demand points (positive part).  Guarded to horizon <= 12.
Grid breakpoint_closure_grid(const ProblemInstance& inst);

}  // namespace rnv
