#include "rnv/closed_form.hpp"

#include <cassert>
#include <stdexcept>

namespace rnv {

ClosedForm::ClosedForm(ProblemInstance inst)
    : inst_((inst.validate(), std::move(inst))), tbl_(inst_.cap, inst_.backorder) {}

void ClosedForm::check_range(const Rational& v, const char* what) const {
  if (v < 0 || v > inst_.cap)
    throw std::invalid_argument(std::string(what) + " must lie in [0, cap]");
}

Rational ClosedForm::order_up_to(int s, const Rational& d) const {
  check_range(d, "previous demand");
  return tbl_.stock_breakpoint(s, demand_band(tbl_, s, d));
}

Rational ClosedForm::understock_piece(int s, int j, const Rational& x,
                                      const Rational& mean) const {
  const Rational& b = inst_.backorder;
  return -b * x + (b + s) * tbl_.stock_breakpoint(s, j + 1) +
         (s * b - (b + 1) * (j + 1)) * mean;
}

Rational ClosedForm::overstock_piece(int s, int j, const Rational& x,
                                     const Rational& mean) const {
  const Rational& b = inst_.backorder;
  return (s - (b + s) / tbl_.demand_breakpoint(s, j) * mean) * x + (s - j) * b * mean;
}

Rational ClosedForm::carry_piece(int s, int j, const Rational& x, const Rational& d) const {
  const Rational& b = inst_.backorder;
  const Rational ratio = (b + s) / tbl_.demand_breakpoint(s, j);
  return s * x + ((b - 1) * s - b * j - ratio * x) * d + ratio * d * d;
}

Rational ClosedForm::reorder_piece(int s, int j, const Rational& d) const {
  const Rational& b = inst_.backorder;
  return s * tbl_.stock_breakpoint(s, j + 1) + (s * b - (b + 1) * (j + 1)) * d;
}

Rational ClosedForm::post_order_cost(int s, const Rational& x, const Rational& mean) const {
  if (s < 1) throw std::invalid_argument("post_order_cost requires s >= 1");
  check_range(x, "order level");
  check_range(mean, "mean");
  const int band = demand_band(tbl_, s - 1, mean);
  if (x < tbl_.stock_breakpoint(s, band)) return understock_piece(s, band - 1, x, mean);
  return overstock_piece(s, stock_band(tbl_, s - 1, x), x, mean);
}

Rational ClosedForm::crossing_demand(int s, const Rational& x) const {
  check_range(x, "level");
  // Ascending scan over the steps of the order-up-to curve: on the band
  // (breakpoint(s+1, j-1), breakpoint(s+1, j)] the target equals
  // stock_breakpoint(s, j), so the first demand covering x - d is
  // max(x - target, band left edge) whenever that lands inside the band.
  for (int j = 0; j <= s; ++j) {
    const Rational& lo = tbl_.demand_breakpoint(s + 1, j - 1);
    const Rational cand = rat_max(x - tbl_.stock_breakpoint(s, j), lo);
    if (cand <= tbl_.demand_breakpoint(s + 1, j)) return cand;
  }
  assert(false && "crossing scan always terminates at the top band");
  return inst_.cap;
}

Rational ClosedForm::post_demand_cost(int s, const Rational& x, const Rational& d) const {
  check_range(x, "level");
  check_range(d, "demand");
  return post_order_cost(s, rat_max(order_up_to(s, d), x - d), d);
}

Rational ClosedForm::post_demand_cost_piecewise(int s, const Rational& x,
                                                const Rational& d) const {
  check_range(x, "level");
  check_range(d, "demand");
  if (d < crossing_demand(s, x)) {
    return carry_piece(s, stock_band(tbl_, s - 1, x - d), x, d);
  }
  return reorder_piece(s, demand_band(tbl_, s, d) - 1, d);
}

Rational ClosedForm::outcome_cost(int s, const Rational& x, const Rational& d) const {
  if (s < 2) throw std::invalid_argument("outcome_cost requires s >= 2");
  return stage_cost(x, d, inst_.backorder) + post_demand_cost(s - 1, x, d);
}

DiscreteMeasure ClosedForm::worst_case_measure(int s, const Rational& x,
                                               const Rational& mean) const {
  check_range(x, "level");
  check_range(mean, "mean");
  std::vector<DiscreteMeasure::Atom> atoms;
  if (mean == 0 || x == inst_.cap) {
    atoms.push_back({Rational(0), 1 - mean / inst_.cap});
    atoms.push_back({inst_.cap, mean / inst_.cap});
    return DiscreteMeasure::make(std::move(atoms));
  }
  const int band = demand_band(tbl_, s - 1, mean);
  if (x < tbl_.stock_breakpoint(s, band)) {
    const Rational& lo = tbl_.demand_breakpoint(s, band - 1);
    const Rational& hi = tbl_.demand_breakpoint(s, band);
    atoms.push_back({lo, (hi - mean) / (hi - lo)});
    atoms.push_back({hi, (mean - lo) / (hi - lo)});
  } else {
    const Rational& edge = tbl_.demand_breakpoint(s, stock_band(tbl_, s - 1, x));
    atoms.push_back({Rational(0), 1 - mean / edge});
    atoms.push_back({edge, mean / edge});
  }
  return DiscreteMeasure::make(std::move(atoms));
}

Rational ClosedForm::policy_order_level(int s, const Rational& y, const Rational& prev_d) const {
  const Rational clamped = rat_min(rat_max(y, Rational(0)), inst_.cap);
  return rat_max(clamped, order_up_to(s, prev_d));
}

RegionIndex ClosedForm::region(int s, const Rational& x) const {
  if (s < 2) throw std::invalid_argument("region requires s >= 2");
  check_range(x, "level");
  RegionIndex r;
  r.demand_band = demand_band(tbl_, s, x);
  r.stock_band = stock_band(tbl_, s, x);
  r.crossing = crossing_demand(s, x);
  r.crossing_band = demand_band(tbl_, s, r.crossing);
  r.stock_band_edge = tbl_.demand_breakpoint(s, stock_band(tbl_, s - 1, x));
  r.demand_band_edge = tbl_.demand_breakpoint(s, demand_band(tbl_, s - 1, x));
  r.crossing_band_edge =
      tbl_.demand_breakpoint(s, demand_band(tbl_, s - 1, crossing_demand(s - 1, x)));
  return r;
}

PolicyReport ClosedForm::solve() const {
  PolicyReport report;
  report.chi = order_up_to(inst_.horizon, inst_.mean);
  report.opt = post_order_cost(inst_.horizon, report.chi, inst_.mean);
  report.first_order_level = rat_max(inst_.x0, report.chi);
  report.value_at_x0 = post_order_cost(inst_.horizon, report.first_order_level, inst_.mean);
  return report;
}

}  // namespace rnv
