#include "rnv/dp_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

#include "rnv/thresholds.hpp"

namespace rnv {

namespace {

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Grid Grid::make(std::vector<Rational> demand, std::vector<Rational> order,
                const Rational& cap) {
  Grid g;
  g.demand_points = sorted_unique(std::move(demand));
  g.order_points = sorted_unique(std::move(order));
  for (const auto& q : g.demand_points)
    if (q < 0 || q > cap) throw std::invalid_argument("demand grid point outside [0, cap]");
  for (const auto& z : g.order_points)
    if (z < 0 || z > cap) throw std::invalid_argument("order grid point outside [0, cap]");
  if (g.demand_points.empty() || g.demand_points.front() != 0 || g.demand_points.back() != cap)
    throw std::invalid_argument("demand grid must contain 0 and cap");
  if (g.order_points.empty()) throw std::invalid_argument("order grid must be nonempty");
  return g;
}

UpperHull::UpperHull(std::vector<std::pair<Rational, Rational>> points) {
  assert(!points.empty());
  for (const auto& p : points) {
    // Pop while the previous vertex is on or below the new chord; collinear
    // vertices are dropped, which keeps the hull minimal without changing
    // any evaluated value.
    while (hull_.size() >= 2) {
      const auto& a = hull_[hull_.size() - 2];
      const auto& b = hull_.back();
      const Rational cross =
          (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross >= 0)
        hull_.pop_back();
      else
        break;
    }
    if (!hull_.empty() && p.first <= hull_.back().first)
      throw std::invalid_argument("hull points must have strictly increasing abscissae");
    hull_.push_back(p);
  }
}

EnvelopeResult UpperHull::at(const Rational& mean) const {
  if (mean < hull_.front().first || mean > hull_.back().first)
    throw std::invalid_argument("envelope mean outside the point range");
  auto it = std::lower_bound(
      hull_.begin(), hull_.end(), mean,
      [](const std::pair<Rational, Rational>& p, const Rational& m) { return p.first < m; });
  EnvelopeResult out;
  if (it->first == mean) {
    out.left = out.right = *it;
    out.weights = {Rational(1), Rational(0)};
    out.value = it->second;
    return out;
  }
  out.right = *it;
  out.left = *(it - 1);
  const Rational wr = (mean - out.left.first) / (out.right.first - out.left.first);
  out.weights = {1 - wr, wr};
  out.value = out.weights.first * out.left.second + wr * out.right.second;
  return out;
}

EnvelopeResult upper_concave_envelope(std::vector<std::pair<Rational, Rational>> points,
                                      const Rational& mean) {
  std::sort(points.begin(), points.end());
  // Coincident abscissae collapse to their largest value; only that one can
  // carry envelope mass.
  std::vector<std::pair<Rational, Rational>> dedup;
  dedup.reserve(points.size());
  for (auto& p : points) {
    if (!dedup.empty() && dedup.back().first == p.first)
      dedup.back().second = p.second;  // sorted, so the later value is larger
    else
      dedup.push_back(std::move(p));
  }
  return UpperHull(std::move(dedup)).at(mean);
}

DpTables::DpTables(std::vector<Rational> demand, std::vector<Rational> order,
                   const Rational& root_mean, int horizon)
    : demand_(std::move(demand)), order_(std::move(order)), horizon_(horizon) {
  means_ = demand_;
  means_.push_back(root_mean);
  means_ = sorted_unique(std::move(means_));
  demand_mean_idx_.reserve(demand_.size());
  for (const auto& q : demand_) demand_mean_idx_.push_back(mean_index(q));
  post_order_.assign(horizon_, std::vector<Rational>(order_.size() * means_.size(), Rational(0)));
  suffix_min_.assign(horizon_, std::vector<Rational>(order_.size() * means_.size(), Rational(0)));
}

std::size_t DpTables::mean_index(const Rational& m) const {
  auto it = std::lower_bound(means_.begin(), means_.end(), m);
  if (it == means_.end() || *it != m) throw std::invalid_argument("mean not in DP mean set");
  return static_cast<std::size_t>(it - means_.begin());
}

const Rational& DpTables::post_order(int s, std::size_t zi, std::size_t mi) const {
  return post_order_[s - 1][zi * means_.size() + mi];
}

void DpTables::set_post_order(int s, std::size_t zi, std::size_t mi, Rational v) {
  post_order_[s - 1][zi * means_.size() + mi] = std::move(v);
}

void DpTables::seal_stage(int s) {
  auto& suf = suffix_min_[s - 1];
  for (std::size_t mi = 0; mi < means_.size(); ++mi) {
    const std::size_t base = mi * order_.size();
    suf[base + order_.size() - 1] = post_order(s, order_.size() - 1, mi);
    for (std::size_t zi = order_.size() - 1; zi-- > 0;) {
      suf[base + zi] = rat_min(post_order(s, zi, mi), suf[base + zi + 1]);
    }
  }
}

const Rational& DpTables::best_cost(int s, const Rational& y, std::size_t mi) const {
  std::size_t zi = 0;
  if (y > 0) {
    auto it = std::lower_bound(order_.begin(), order_.end(), y);
    if (it == order_.end())
      throw std::invalid_argument("order grid does not reach the required level");
    zi = static_cast<std::size_t>(it - order_.begin());
  }
  return suffix_min_[s - 1][mi * order_.size() + zi];
}

namespace {

// Shared stage loop; `martingale` keys the continuation on the realized
// demand, the independent variant always uses the root mean.
DpTables run_dp(const ProblemInstance& inst, const Grid& grid, bool martingale) {
  inst.validate();
  DpTables tables(grid.demand_points, grid.order_points, inst.mean, inst.horizon);
  const auto& demand = tables.demand_points();
  const auto& order = tables.order_points();
  const std::size_t root_mi = tables.mean_index(inst.mean);
  for (int s = 1; s <= inst.horizon; ++s) {
    for (std::size_t zi = 0; zi < order.size(); ++zi) {
      const Rational& z = order[zi];
      std::vector<std::pair<Rational, Rational>> pts;
      pts.reserve(demand.size());
      for (std::size_t qi = 0; qi < demand.size(); ++qi) {
        const Rational& q = demand[qi];
        Rational f = stage_cost(z, q, inst.backorder);
        if (s > 1) {
          const std::size_t mi = martingale ? tables.demand_mean_index(qi) : root_mi;
          f += tables.best_cost(s - 1, z - q, mi);
        }
        pts.emplace_back(q, std::move(f));
      }
      const UpperHull hull(std::move(pts));
      if (martingale) {
        for (std::size_t mi = 0; mi < tables.means().size(); ++mi)
          tables.set_post_order(s, zi, mi, hull.at(tables.means()[mi]).value);
      } else {
        tables.set_post_order(s, zi, root_mi, hull.at(inst.mean).value);
      }
    }
    tables.seal_stage(s);
  }
  return tables;
}

}  // namespace

MartingaleDpResult solve_martingale_dp(const ProblemInstance& inst, const Grid& grid) {
  DpTables tables = run_dp(inst, grid, /*martingale=*/true);
  const std::size_t root_mi = tables.mean_index(inst.mean);
  Rational value = tables.best_cost(inst.horizon, inst.x0, root_mi);
  return MartingaleDpResult{std::move(value), std::move(tables)};
}

Rational solve_independent_dp(const ProblemInstance& inst, const Grid& grid) {
  DpTables tables = run_dp(inst, grid, /*martingale=*/false);
  return tables.best_cost(inst.horizon, inst.x0, tables.mean_index(inst.mean));
}

Grid breakpoint_closure_grid(const ProblemInstance& inst) {
  inst.validate();
  if (inst.horizon > 12)
    throw guard_error("breakpoint closure grid is guarded to horizon <= 12");
  const ThresholdTable tbl(inst.cap, inst.backorder);

  std::set<Rational> demand{Rational(0), inst.cap};
  for (int s = 1; s <= inst.horizon; ++s)
    for (int j = 0; j <= s - 1; ++j) demand.insert(tbl.demand_breakpoint(s, j));

  std::set<Rational> order{Rational(0), inst.cap, inst.x0};
  for (int s = 1; s <= inst.horizon; ++s)
    for (int j = 0; j <= s; ++j) order.insert(tbl.stock_breakpoint(s, j));

  // Close the order set under subtracting demand points (positive part), to
  // a fixpoint: post-demand levels must be grid points for the stage minima
  // to land exactly.
  std::vector<Rational> frontier(order.begin(), order.end());
  while (!frontier.empty()) {
    std::vector<Rational> next;
    for (const auto& o : frontier) {
      for (const auto& d : demand) {
        if (d == 0) continue;
        Rational r = o - d;
        if (r > 0 && order.insert(r).second) next.push_back(std::move(r));
      }
    }
    if (order.size() > 20000)
      throw guard_error("breakpoint closure grid exceeded the size guard");
    frontier = std::move(next);
  }

  return Grid::make(std::vector<Rational>(demand.begin(), demand.end()),
                    std::vector<Rational>(order.begin(), order.end()), inst.cap);
}

}  // namespace rnv
