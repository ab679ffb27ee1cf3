#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// harness.  Each suite draws `instances` random instances (horizon <= 6)
// from the supplied generator and returns the number of violations found;
// every check is exact rational arithmetic unless noted.

#include <utility>
#include <vector>

#include "rnv/closed_form.hpp"
#include "rnv/dp_oracle.hpp"
#include "rnv/worst_case_sim.hpp"
#include "support.hpp"

namespace rnv::testing {

constexpr int kPropertyHorizon = 6;

// Exact slope comparison on consecutive triples: convex means the slopes of
// (p1,p2) and (p2,p3) are nondecreasing.
inline bool convex_triple(const std::pair<Rational, Rational>& p1,
                          const std::pair<Rational, Rational>& p2,
                          const std::pair<Rational, Rational>& p3) {
  return (p3.second - p2.second) * (p2.first - p1.first) >=
         (p2.second - p1.second) * (p3.first - p2.first);
}

inline bool concave_triple(const std::pair<Rational, Rational>& p1,
                           const std::pair<Rational, Rational>& p2,
                           const std::pair<Rational, Rational>& p3) {
  return (p3.second - p2.second) * (p2.first - p1.first) <=
         (p2.second - p1.second) * (p3.first - p2.first);
}

inline int count_shape_violations(const std::vector<std::pair<Rational, Rational>>& pts,
                                  bool convex) {
  int violations = 0;
  for (std::size_t i = 2; i < pts.size(); ++i) {
    const bool ok = convex ? convex_triple(pts[i - 2], pts[i - 1], pts[i])
                           : concave_triple(pts[i - 2], pts[i - 1], pts[i]);
    if (!ok) ++violations;
  }
  return violations;
}

// Ladder interlacing across consecutive horizons, plus monotonicity in the
// index and in the horizon.
inline int check_threshold_interlacing(TestRng& rng, int instances) {
  int violations = 0;
  for (int n = 0; n < instances; ++n) {
    const auto pi = rng.random_instance(kPropertyHorizon);
    const ThresholdTable tbl(pi.cap, pi.backorder);
    for (int s = 1; s <= pi.horizon; ++s) {
      for (int j = 0; j <= s - 2; ++j) {
        const bool ok = tbl.demand_breakpoint(s, j) < tbl.demand_breakpoint(s + 1, j + 1) &&
                        tbl.demand_breakpoint(s + 1, j + 1) < tbl.demand_breakpoint(s, j + 1);
        if (!ok) ++violations;
      }
      for (int j = 0; j <= s; ++j) {
        if (tbl.demand_breakpoint(s, j) <= tbl.demand_breakpoint(s, j - 1)) ++violations;
        if (tbl.demand_breakpoint(s + 1, j) > tbl.demand_breakpoint(s, j)) ++violations;
        if (tbl.stock_breakpoint(s + 1, j) > tbl.stock_breakpoint(s, j)) ++violations;
        if (j >= 1 && tbl.stock_breakpoint(s, j) < tbl.stock_breakpoint(s, j - 1)) ++violations;
      }
    }
  }
  return violations;
}

// Post-order cost is convex in the order level for every fixed mean.
inline int check_post_order_convexity(TestRng& rng, int instances) {
  int violations = 0;
  for (int n = 0; n < instances; ++n) {
    const auto pi = rng.random_instance(kPropertyHorizon);
    const ClosedForm cf(pi);
    const Rational d = rng.rational_in(pi.cap, 16);
    const int s = 1 + static_cast<int>(rng.below(pi.horizon));
    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& x : even_grid(pi.cap, 24)) pts.emplace_back(x, cf.post_order_cost(s, x, d));
    violations += count_shape_violations(pts, /*convex=*/true);
  }
  return violations;
}

// The order-up-to target minimizes the post-order cost over the level grid.
inline int check_target_minimality(TestRng& rng, int instances) {
  int violations = 0;
  for (int n = 0; n < instances; ++n) {
    const auto pi = rng.random_instance(kPropertyHorizon);
    const ClosedForm cf(pi);
    const Rational d = rng.rational_in(pi.cap, 16);
    const int s = 1 + static_cast<int>(rng.below(pi.horizon));
    const Rational at_target = cf.post_order_cost(s, cf.order_up_to(s, d), d);
    for (const auto& x : even_grid(pi.cap, 24)) {
      if (cf.post_order_cost(s, x, d) < at_target) ++violations;
    }
  }
  return violations;
}

// The composed and piecewise post-demand costs agree exactly everywhere.
inline int check_post_demand_paths_agree(TestRng& rng, int instances) {
  int violations = 0;
  for (int n = 0; n < instances; ++n) {
    const auto pi = rng.random_instance(kPropertyHorizon);
    const ClosedForm cf(pi);
    const int s = 1 + static_cast<int>(rng.below(pi.horizon));
    for (const auto& x : even_grid(pi.cap, 12)) {
      for (const auto& d : even_grid(pi.cap, 12)) {
        if (cf.post_demand_cost(s, x, d) != cf.post_demand_cost_piecewise(s, x, d)) ++violations;
      }
    }
  }
  return violations;
}

// Post-demand cost is convex in the demand below the crossing point and
// concave above it.
inline int check_post_demand_shape(TestRng& rng, int instances) {
  int violations = 0;
  for (int n = 0; n < instances; ++n) {
    const auto pi = rng.random_instance(kPropertyHorizon);
    const ClosedForm cf(pi);
    const int s = 1 + static_cast<int>(rng.below(pi.horizon));
    const Rational x = rng.rational_in(pi.cap, 16);
    const Rational z = cf.crossing_demand(s, x);
    std::vector<std::pair<Rational, Rational>> below, above;
    for (const auto& d : even_grid(pi.cap, 32)) {
      if (d > 0 && d < z) below.emplace_back(d, cf.post_demand_cost(s, x, d));
      if (d > z && d < pi.cap) above.emplace_back(d, cf.post_demand_cost(s, x, d));
    }
    violations += count_shape_violations(below, /*convex=*/true);
    violations += count_shape_violations(above, /*convex=*/false);
  }
  return violations;
}

// Outcome cost curvature: convex below the crossing-band edge, convex within
// every demand band, concave above the demand-band edge.
inline int check_outcome_cost_regions(TestRng& rng, int instances) {
  int violations = 0;
  for (int n = 0; n < instances; ++n) {
    auto pi = rng.random_instance(kPropertyHorizon);
    if (pi.horizon < 2) pi.horizon = 2;
    const ClosedForm cf(pi);
    const int s = 2 + static_cast<int>(rng.below(pi.horizon - 1));
    const Rational x = rng.rational_in(pi.cap, 16);
    const auto r = cf.region(s, x);
    const auto grid = even_grid(pi.cap, 32);

    std::vector<std::pair<Rational, Rational>> low, high;
    for (const auto& d : grid) {
      if (d > 0 && d < r.crossing_band_edge) low.emplace_back(d, cf.outcome_cost(s, x, d));
      if (d > r.demand_band_edge && d < pi.cap) high.emplace_back(d, cf.outcome_cost(s, x, d));
    }
    violations += count_shape_violations(low, /*convex=*/true);
    violations += count_shape_violations(high, /*convex=*/false);

    const auto& tbl = cf.thresholds();
    for (int j = -1; j <= s - 2; ++j) {
      const Rational& lo = tbl.demand_breakpoint(s, j);
      const Rational& hi = tbl.demand_breakpoint(s, j + 1);
      std::vector<std::pair<Rational, Rational>> band;
      for (const auto& d : grid) {
        if (d > lo && d < hi) band.emplace_back(d, cf.outcome_cost(s, x, d));
      }
      violations += count_shape_violations(band, /*convex=*/true);
    }
  }
  return violations;
}

// Envelope value dominates the bracketing interpolation and the expectation
// of every feasible two-point test measure.
inline int check_envelope_dominance(TestRng& rng, int instances) {
  int violations = 0;
  for (int n = 0; n < instances; ++n) {
    const long m = 3 + rng.below(7);
    std::vector<std::pair<Rational, Rational>> pts;
    for (long k = 0; k <= m; ++k)
      pts.emplace_back(frac(k, m), frac(rng.below(61) - 30, 1 + rng.below(8)));
    const Rational mean = frac(rng.below(m + 1), m);
    const auto res = upper_concave_envelope(pts, mean);

    auto bracket = std::lower_bound(
        pts.begin(), pts.end(), mean,
        [](const std::pair<Rational, Rational>& p, const Rational& q) { return p.first < q; });
    Rational interp = bracket->second;
    if (bracket->first != mean) {
      const auto& right = *bracket;
      const auto& left = *(bracket - 1);
      interp = left.second + (right.second - left.second) * (mean - left.first) /
                                 (right.first - left.first);
    }
    if (res.value < interp) ++violations;

    for (int trial = 0; trial < 8; ++trial) {
      const long i = rng.below(m + 1), j = rng.below(m + 1);
      const auto& left = pts[std::min(i, j)];
      const auto& right = pts[std::max(i, j)];
      if (left.first > mean || right.first < mean) continue;
      Rational value;
      if (left.first == right.first) {
        value = left.second;
      } else {
        const Rational wr = (mean - left.first) / (right.first - left.first);
        value = (1 - wr) * left.second + wr * right.second;
      }
      if (res.value < value) ++violations;
    }
  }
  return violations;
}

// Every enumerated trajectory absorbs at 0 (demand stays 0, level frozen)
// and at the cap (demand and level pinned, zero cost).
inline int check_absorption(TestRng& rng, int instances) {
  int violations = 0;
  for (int n = 0; n < instances; ++n) {
    const auto pi = rng.random_instance(kPropertyHorizon);
    for (const auto& traj : enumerate_exact(pi).trajectories) {
      bool dropped = false, saturated = false;
      for (std::size_t i = 0; i < traj.steps.size(); ++i) {
        const auto& step = traj.steps[i];
        if (dropped && !(step.d == 0 && step.x == traj.steps[i - 1].x)) ++violations;
        if (saturated && !(step.d == pi.cap && step.x == pi.cap && step.cost == 0)) ++violations;
        if (step.d == 0) dropped = true;
        if (step.d == pi.cap) saturated = true;
      }
    }
  }
  return violations;
}

}  // namespace rnv::testing
