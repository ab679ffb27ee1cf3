#include "rnv/independent.hpp"

#include <stdexcept>

#include "rnv/closed_form.hpp"

namespace rnv {

IndReport ind_policy_value(const ProblemInstance& inst) {
  inst.validate();
  IndReport report{Rational(0), Rational(0), DiscreteMeasure{}, std::nullopt, true};
  const bool low_mean = inst.mean * (inst.backorder + 1) <= inst.cap;
  report.base_stock = low_mean ? Rational(0) : inst.cap;
  report.opt = low_mean ? Rational(inst.horizon * inst.backorder * inst.mean)
                        : Rational(inst.horizon * (inst.cap - inst.mean));
  report.worst_marginal = DiscreteMeasure::make(
      {{Rational(0), 1 - inst.mean / inst.cap}, {inst.cap, inst.mean / inst.cap}});
  report.ratio_mar_over_ind = finite_ratio(inst);
  report.opt_is_value_at_x0 = inst.x0 <= report.base_stock;
  return report;
}

Rational full_inventory_value(const ProblemInstance& inst) {
  inst.validate();
  if (inst.mean == 0) throw std::domain_error("full inventory value undefined at mean = 0");
  if (inst.mean * (inst.backorder + 1) >= inst.cap)
    throw std::domain_error("full inventory value requires mean/cap < 1/(backorder+1)");
  const Rational& b = inst.backorder;
  const Rational& cap = inst.cap;
  const Rational& mu = inst.mean;
  const Rational decay = pow_rational(1 - mu / cap, static_cast<unsigned long>(inst.horizon));
  return b * mu * inst.horizon + cap * cap / mu - (b + 1) * cap +
         decay * (1 + b - cap / mu) * cap;
}

std::optional<Rational> finite_ratio(const ProblemInstance& inst) {
  inst.validate();
  if (inst.mean == 0 || inst.mean == inst.cap) return std::nullopt;
  ProblemInstance root = inst;
  root.x0 = 0;
  const Rational opt_mar = ClosedForm(root).solve().opt;
  const bool low_mean = inst.mean * (inst.backorder + 1) <= inst.cap;
  const Rational opt_ind = low_mean ? Rational(inst.horizon * inst.backorder * inst.mean)
                                    : Rational(inst.horizon * (inst.cap - inst.mean));
  return opt_mar / opt_ind;
}

}  // namespace rnv
