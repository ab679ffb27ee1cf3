#include "rnv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rnv/thresholds.hpp"
#include "rnv/worst_case_sim.hpp"

namespace rnv {

namespace {

double mean_fraction_of(const ProblemInstance& inst) {
  return to_double(inst.mean) / to_double(inst.cap);
}

// Limiting paths extended past the saturation fraction; the public
// limit_paths enforces the documented domain, the diagnostics need the
// formulas at t/T slightly beyond it.
double demand_limit_raw(const ProblemInstance& inst, double alpha) {
  return to_double(inst.mean) * std::pow(1.0 - alpha, -to_double(inst.backorder));
}

double stock_limit_raw(const ProblemInstance& inst, double alpha) {
  const double b = to_double(inst.backorder);
  const double g = mean_fraction_of(inst);
  return to_double(inst.mean) * std::pow(g, 1.0 / b) * std::pow(1.0 - alpha, -(b + 1.0));
}

}  // namespace

LimitLaw limit_law(const ProblemInstance& inst) {
  inst.validate();
  LimitLaw law;
  law.mean_fraction = mean_fraction_of(inst);
  law.saturation_fraction = 1.0 - std::pow(law.mean_fraction, 1.0 / to_double(inst.backorder));
  law.terminal_atom = law.mean_fraction;
  return law;
}

std::pair<double, double> limit_paths(const ProblemInstance& inst, double alpha) {
  const LimitLaw law = limit_law(inst);
  if (alpha < 0.0 || alpha > law.saturation_fraction)
    throw std::invalid_argument("alpha outside [0, saturation fraction]");
  return {demand_limit_raw(inst, alpha), stock_limit_raw(inst, alpha)};
}

double z_inf_cdf(const ProblemInstance& inst, double alpha) {
  const LimitLaw law = limit_law(inst);
  if (alpha < 0.0) return 0.0;
  if (alpha >= law.saturation_fraction) return 1.0;
  return 1.0 - std::pow(1.0 - alpha, to_double(inst.backorder));
}

double ratio_limit(const ProblemInstance& inst) {
  inst.validate();
  if (inst.mean == 0 || inst.mean == inst.cap)
    throw std::domain_error("ratio limit requires 0 < mean < cap");
  const double b = to_double(inst.backorder);
  const double g = mean_fraction_of(inst);
  const double shrink = 1.0 - std::pow(g, 1.0 / b);
  if (inst.mean * (inst.backorder + 1) <= inst.cap) return shrink;
  return shrink * b * to_double(inst.mean) / (to_double(inst.cap) - to_double(inst.mean));
}

double large_b_ratio_limit(double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::domain_error("large-b ratio limit requires gamma in (0, 1)");
  const double inv = 1.0 / gamma;
  return std::log(inv) / (inv - 1.0);
}

namespace {

// Kolmogorov distance between the step CDF of the rescaled exit time and the
// mixed limit CDF.  Both are cadlag; the supremum is attained at a one-sided
// limit of a discontinuity of either function.
double kolmogorov_distance(const std::vector<std::pair<double, double>>& atoms,
                           double saturation_fraction, double b) {
  auto limit_cdf = [&](double a, bool from_left) {
    if (a < 0.0) return 0.0;
    if (from_left ? a > saturation_fraction : a >= saturation_fraction) return 1.0;
    return 1.0 - std::pow(1.0 - a, b);
  };
  auto step_cdf = [&](double a, bool from_left) {
    double cum = 0.0;
    for (const auto& [pos, c] : atoms) {
      if (from_left ? pos < a : pos <= a) cum = c;  // c is cumulative at pos
    }
    return cum;
  };
  double sup = 0.0;
  std::vector<double> candidates;
  candidates.reserve(atoms.size() + 1);
  for (const auto& [pos, c] : atoms) candidates.push_back(pos);
  candidates.push_back(saturation_fraction);
  for (double a : candidates) {
    sup = std::max(sup, std::fabs(step_cdf(a, false) - limit_cdf(a, false)));
    sup = std::max(sup, std::fabs(step_cdf(a, true) - limit_cdf(a, true)));
  }
  return sup;
}

}  // namespace

std::vector<ConvergenceEntry> convergence_report(const ProblemInstance& base,
                                                 const std::vector<int>& horizons) {
  base.validate();
  if (base.mean == 0 || base.mean == base.cap)
    throw std::invalid_argument("convergence report requires 0 < mean < cap");
  if (!std::is_sorted(horizons.begin(), horizons.end()))
    throw std::invalid_argument("horizons must be ascending");

  const double b = to_double(base.backorder);
  const double lam_inf = 1.0 - std::pow(mean_fraction_of(base), 1.0 / b);

  std::vector<ConvergenceEntry> out;
  out.reserve(horizons.size());
  for (int T : horizons) {
    ProblemInstance inst = base;
    inst.horizon = T;
    inst.x0 = 0;
    const ChainSchedule sched = chain_schedule(inst);
    const StoppingLaw law = stopping_law(sched);
    const ThresholdTable tbl(inst.cap, inst.backorder);
    const int band = demand_band(tbl, T, inst.mean);
    const int sat = sched.saturation_time;

    ConvergenceEntry entry;
    entry.horizon = T;
    entry.gamma_frac = static_cast<double>(band) / T;
    entry.lambda_frac = static_cast<double>(sat) / T;

    for (int t = 1; t <= sat; ++t) {
      const double alpha = static_cast<double>(t) / T;
      entry.sup_dX = std::max(entry.sup_dX, std::fabs(to_double(sched.stock_ladder[t]) -
                                                      stock_limit_raw(inst, alpha)));
      entry.sup_dD = std::max(entry.sup_dD, std::fabs(to_double(sched.demand_ladder[t]) -
                                                      demand_limit_raw(inst, alpha)));
    }

    std::vector<std::pair<double, double>> atoms;  // (t/T, cumulative mass)
    Rational cum = 0;
    for (const auto& atom : law.exit_time.atoms()) {
      const long t = atom.point.get_num().get_si();
      cum += atom.mass;
      atoms.emplace_back(static_cast<double>(t) / T, to_double(cum));
      // The first atom absorbs the alignment offset of the mean inside its
      // band and its rescaled mass does not converge pointwise to the
      // density; the pmf comparison is meaningful on the interior steps.
      if (t >= 2 && t < sat) {
        const double density = b * std::pow(1.0 - static_cast<double>(t) / T, b - 1.0);
        entry.sup_dZ = std::max(entry.sup_dZ, std::fabs(T * to_double(atom.mass) - density));
      }
    }
    entry.ks = kolmogorov_distance(atoms, lam_inf, b);
    out.push_back(entry);
  }
  return out;
}

}  // namespace rnv
