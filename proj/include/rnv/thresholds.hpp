#pragma once

// Threshold ladders behind every closed-form quantity.  Row s holds the
// demand breakpoints and candidate order-up-to levels for a horizon of s
// periods; rows are built lazily and memoized.  Not internally synchronized:
// call ensure() before sharing a table across threads.

#include <vector>

#include "rnv/rational.hpp"

namespace rnv {

class ThresholdTable {
 public:
  ThresholdTable(Rational cap, Rational backorder);

  // Demand breakpoint for row s (s >= 1), index j in [-1, s].
  // j = -1 gives 0, j = s-1 gives cap, j = s exceeds cap.
  const Rational& demand_breakpoint(int s, int j) const;

  // Candidate order-up-to level for row s, index j in [-1, s].
  // j in {-1, 0} gives 0, j = s gives cap.
  const Rational& stock_breakpoint(int s, int j) const;

  // Materializes rows 1..horizon eagerly.
  void ensure(int horizon) const;

  const Rational& cap() const { return cap_; }
  const Rational& backorder() const { return b_; }

 private:
  struct Row {
    std::vector<Rational> demand;  // index j + 1, size s + 2
    std::vector<Rational> stock;
  };

  const Row& row(int s) const;

  Rational cap_;
  Rational b_;
  mutable std::vector<Row> rows_;  // rows_[s - 1]
};

// Index of the demand band containing `mean` at level s: the smallest j >= 0
// with mean <= demand_breakpoint(s + 1, j); 0 when mean = 0.  Requires
// 0 <= mean <= cap.
int demand_band(const ThresholdTable& tbl, int s, const Rational& mean);

// Index of the stock band containing `level` at level s: s when level = cap,
// otherwise the j with stock_breakpoint(s+1, j) <= level < stock_breakpoint(s+1, j+1).
// Requires 0 <= level <= cap.
int stock_band(const ThresholdTable& tbl, int s, const Rational& level);

}  // namespace rnv
