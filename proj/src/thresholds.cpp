#include "rnv/thresholds.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace rnv {

ThresholdTable::ThresholdTable(Rational cap, Rational backorder)
    : cap_(std::move(cap)), b_(std::move(backorder)) {
  if (!(cap_ > 0)) throw std::invalid_argument("threshold table requires cap > 0");
  if (!(b_ > 0)) throw std::invalid_argument("threshold table requires backorder > 0");
}

const ThresholdTable::Row& ThresholdTable::row(int s) const {
  assert(s >= 1);
  if (static_cast<std::size_t>(s) > rows_.size()) rows_.resize(s);
  Row& r = rows_[s - 1];
  if (!r.demand.empty()) return r;

  // Index j + 1; j runs over [-1, s].  The demand entries satisfy the
  // descending recurrence A(j-1) = A(j) * j / (b + j) from A(s-1) = cap,
  // which also yields A(-1) = 0 through the j = 0 factor.
  r.demand.assign(s + 2, Rational(0));
  r.demand[s] = cap_;  // j = s - 1
  for (int idx = s; idx >= 2; --idx) {
    const Rational j(idx - 1);
    r.demand[idx - 1] = r.demand[idx] * j / (b_ + j);
  }
  r.demand[s + 1] = cap_ * (b_ + s) / s;  // j = s

  r.stock.assign(s + 2, Rational(0));
  for (int idx = 2; idx <= s + 1; ++idx) {
    const Rational j(idx - 1);
    r.stock[idx] = r.demand[idx] * j / (b_ + s);
  }
  return r;
}

const Rational& ThresholdTable::demand_breakpoint(int s, int j) const {
  assert(j >= -1 && j <= s);
  return row(s).demand[j + 1];
}

const Rational& ThresholdTable::stock_breakpoint(int s, int j) const {
  assert(j >= -1 && j <= s);
  return row(s).stock[j + 1];
}

void ThresholdTable::ensure(int horizon) const {
  for (int s = 1; s <= horizon; ++s) row(s);
}

int demand_band(const ThresholdTable& tbl, int s, const Rational& mean) {
  if (mean < 0 || mean > tbl.cap())
    throw std::invalid_argument("demand band requires 0 <= mean <= cap");
  if (mean == 0) return 0;
  // Smallest j in [0, s] with mean <= breakpoint(s+1, j); the row is
  // strictly increasing and tops out at cap by index s.
  int lo = 0, hi = s;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (mean <= tbl.demand_breakpoint(s + 1, mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

int stock_band(const ThresholdTable& tbl, int s, const Rational& level) {
  if (level < 0 || level > tbl.cap())
    throw std::invalid_argument("stock band requires 0 <= level <= cap");
  if (level == tbl.cap()) return s;
  // Largest j in [0, s] with breakpoint(s+1, j) <= level.
  int lo = 0, hi = s;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (tbl.stock_breakpoint(s + 1, mid) <= level)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace rnv
