#pragma once

// Independent-demand baseline: closed-form optimal base-stock policy and
// value, the worst-case i.i.d. marginal, the full-inventory closed form,
// and finite-horizon comparison ratios against the martingale model.

#include <optional>

#include "rnv/model.hpp"

namespace rnv {

struct IndReport {
  Rational base_stock;               // optimal order-up-to constant (0 or cap)
  Rational opt;                      // minimax cost when x0 <= base_stock
  DiscreteMeasure worst_marginal;    // two-point i.i.d. worst case on {0, cap}
  std::optional<Rational> ratio_mar_over_ind;  // at x0 = 0; empty when degenerate
  bool opt_is_value_at_x0 = true;    // false when x0 > base_stock
};

IndReport ind_policy_value(const ProblemInstance& inst);

// Exact independent-demand minimax value at full initial inventory
// (x0 = cap), valid for 0 < mean/cap < 1/(backorder+1); throws
// std::domain_error outside that regime.
Rational full_inventory_value(const ProblemInstance& inst);

// Opt(martingale)/Opt(independent) at x0 = 0, exact.  Empty when the mean
// is 0 or cap (both optima vanish).
std::optional<Rational> finite_ratio(const ProblemInstance& inst);

}  // namespace rnv
