#pragma once

// Large-horizon limits: the limiting demand/stock paths, the mixed law of
// the rescaled exit time, ratio limits, and quantitative weak-convergence
// diagnostics.  Everything here is binary64; comparisons in tests use
// absolute tolerances or trend assertions.

#include <vector>

#include "rnv/model.hpp"

namespace rnv {

struct LimitLaw {
  double mean_fraction = 0.0;        // mean / cap
  double saturation_fraction = 0.0;  // 1 - (mean/cap)^(1/b)
  double terminal_atom = 0.0;        // mass at the saturation fraction
};

LimitLaw limit_law(const ProblemInstance& inst);

// Limiting (demand, stock) path at rescaled time alpha in
// [0, saturation_fraction]; both equal cap at the right endpoint.
std::pair<double, double> limit_paths(const ProblemInstance& inst, double alpha);

// Mixed CDF of the limiting rescaled exit time: continuous density below the
// saturation fraction, atom there, 1 beyond.
double z_inf_cdf(const ProblemInstance& inst, double alpha);

// Limit of Opt(martingale)/Opt(independent) as the horizon grows; requires
// 0 < mean < cap.
double ratio_limit(const ProblemInstance& inst);

// Limit of ratio_limit as the backorder cost grows: log(1/g)/(1/g - 1) for
// g = mean/cap in (0, 1).
double large_b_ratio_limit(double gamma);

struct ConvergenceEntry {
  int horizon = 0;
  double sup_dX = 0.0;      // sup_t |stock_ladder[t] - limiting stock at t/T|
  double sup_dD = 0.0;      // sup_t |demand_ladder[t] - limiting demand at t/T|
  double sup_dZ = 0.0;      // sup_{2 <= t < sat} |T * exit pmf(t) - limiting density at t/T|
  double gamma_frac = 0.0;  // demand band index of the mean, over T
  double lambda_frac = 0.0; // saturation time over T
  double ks = 0.0;          // Kolmogorov distance, exit time / T vs mixed limit CDF
};

// Exact ladders converted to floats against the limiting formulas, one entry
// per horizon.  Requires 0 < mean < cap and ascending horizons.
std::vector<ConvergenceEntry> convergence_report(const ProblemInstance& base,
                                                 const std::vector<int>& horizons);

}  // namespace rnv
