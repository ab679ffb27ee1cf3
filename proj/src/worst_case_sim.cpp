#include "rnv/worst_case_sim.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <tuple>

namespace rnv {

namespace {

constexpr std::uint64_t kWeylStep = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed + kWeylStep) ^ mix64(stream * 0xD1342543DE82EF95ull + 1))) {}

std::uint64_t CounterRng::next() { return mix64(key_ + (++counter_) * kWeylStep); }

double CounterRng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

ChainSchedule chain_schedule(const ProblemInstance& inst) {
  inst.validate();
  const ThresholdTable tbl(inst.cap, inst.backorder);
  const Rational& b = inst.backorder;
  const int T = inst.horizon;
  const int band = demand_band(tbl, T, inst.mean);
  ChainSchedule sched;
  sched.saturation_time = std::max(T - band, 1);
  sched.demand_ladder.resize(sched.saturation_time + 1);
  sched.stock_ladder.resize(sched.saturation_time + 1);
  sched.demand_ladder[0] = inst.mean;
  sched.stock_ladder[0] = band * inst.mean / (b + T + 1);
  // Walk the breakpoints down one horizon per step via the factor
  // (b + s) / s instead of materializing every row; the ladders are long
  // for large horizons and each needs one entry per row.
  const int ladder_band = std::min(band, T - 1);
  Rational demand_edge = tbl.demand_breakpoint(T, ladder_band);
  Rational target_edge = tbl.demand_breakpoint(T, band);
  for (int t = 1; t <= sched.saturation_time; ++t) {
    const int s = T + 1 - t;
    sched.demand_ladder[t] = demand_edge;
    sched.stock_ladder[t] = band * target_edge / (b + s);
    if (t < sched.saturation_time) {
      const Rational shrink = Rational(b + (s - 1)) / (s - 1);
      demand_edge *= shrink;
      target_edge *= shrink;
    }
  }
  return sched;
}

StoppingLaw stopping_law(const ChainSchedule& sched) {
  const int sat = sched.saturation_time;
  const Rational& mean = sched.demand_ladder[0];
  const Rational& cap = sched.demand_ladder[sat];

  std::vector<DiscreteMeasure::Atom> exit_atoms;
  if (mean == 0) {
    // Degenerate all-zero demand chain: the ride ends immediately.
    exit_atoms.push_back({Rational(1), Rational(1)});
  } else {
    for (int t = 1; t < sat; ++t) {
      const Rational& prev = sched.demand_ladder[t - 1];
      const Rational& cur = sched.demand_ladder[t];
      exit_atoms.push_back({Rational(t), (1 - prev / cur) * (mean / prev)});
    }
    exit_atoms.push_back({Rational(sat), mean / sched.demand_ladder[sat - 1]});
  }

  std::vector<DiscreteMeasure::Atom> jump_atoms;
  const Rational up = sched.demand_ladder[sat - 1] / cap;
  jump_atoms.push_back({Rational(0), 1 - up});
  jump_atoms.push_back({cap, up});

  return StoppingLaw{DiscreteMeasure::make(std::move(exit_atoms)),
                     DiscreteMeasure::make(std::move(jump_atoms))};
}

namespace {

TrajectoryStep make_step(int t, Rational y, Rational x, Rational d, const Rational& b) {
  Rational cost = stage_cost(x, d, b);
  return TrajectoryStep{t, std::move(y), std::move(x), std::move(d), std::move(cost)};
}

// Trajectory for the outcome "ride the ladder until exit_t, then demand is
// `terminal` (0 or cap) from exit_t on".
Trajectory ladder_trajectory(const ProblemInstance& inst, const ChainSchedule& sched,
                             int exit_t, const Rational& terminal, Rational weight) {
  Trajectory traj;
  traj.weight = std::move(weight);
  Rational y = inst.x0;
  for (int t = 1; t < exit_t; ++t) {
    traj.steps.push_back(
        make_step(t, y, sched.stock_ladder[t], sched.demand_ladder[t], inst.backorder));
    y = sched.stock_ladder[t] - sched.demand_ladder[t];
  }
  // Exit period: the order was already placed at the ladder level.
  traj.steps.push_back(make_step(exit_t, y, sched.stock_ladder[exit_t], terminal, inst.backorder));
  y = sched.stock_ladder[exit_t] - terminal;
  for (int t = exit_t + 1; t <= inst.horizon; ++t) {
    // Absorbed: either stuck holding the exit-time stock, or matching cap.
    const Rational x = terminal == 0 ? sched.stock_ladder[exit_t] : inst.cap;
    traj.steps.push_back(make_step(t, y, x, terminal, inst.backorder));
    y = x - terminal;
  }
  return traj;
}

EnumerationResult enumerate_by_chain(const ProblemInstance& inst) {
  if (inst.horizon > 16)
    throw guard_error("ladder enumeration is guarded to horizon <= 16");
  const ChainSchedule sched = chain_schedule(inst);
  const StoppingLaw law = stopping_law(sched);
  const int sat = sched.saturation_time;

  EnumerationResult out;
  out.expected_cost = 0;
  for (const auto& exit_atom : law.exit_time.atoms()) {
    const int t = static_cast<int>(exit_atom.point.get_num().get_si());
    if (t < sat) {
      out.trajectories.push_back(ladder_trajectory(inst, sched, t, Rational(0), exit_atom.mass));
    } else {
      for (const auto& jump : law.terminal_jump.atoms()) {
        out.trajectories.push_back(
            ladder_trajectory(inst, sched, sat, jump.point, exit_atom.mass * jump.mass));
      }
    }
  }
  for (const auto& traj : out.trajectories)
    out.expected_cost += traj.weight * traj.total_cost();
  return out;
}

void walk_outcomes(const ClosedForm& cf, int s, const Rational& y, const Rational& prev_d,
                   const Rational& weight, std::vector<TrajectoryStep>& steps,
                   std::vector<Trajectory>& out) {
  const ProblemInstance& inst = cf.instance();
  const Rational x = cf.policy_order_level(s, y, prev_d);
  const DiscreteMeasure q = cf.worst_case_measure(s, x, prev_d);
  for (const auto& atom : q.atoms()) {
    steps.push_back(make_step(inst.horizon - s + 1, y, x, atom.point, inst.backorder));
    if (s == 1) {
      out.push_back(Trajectory{steps, weight * atom.mass});
    } else {
      walk_outcomes(cf, s - 1, x - atom.point, atom.point, weight * atom.mass, steps, out);
    }
    steps.pop_back();
  }
}

}  // namespace

EnumerationResult enumerate_recursive(const ProblemInstance& inst) {
  inst.validate();
  if (inst.horizon > 12)
    throw guard_error("branching enumeration is guarded to horizon <= 12");
  const ClosedForm cf(inst);
  EnumerationResult out;
  std::vector<TrajectoryStep> steps;
  walk_outcomes(cf, inst.horizon, inst.x0, inst.mean, Rational(1), steps, out.trajectories);
  out.expected_cost = 0;
  for (const auto& traj : out.trajectories)
    out.expected_cost += traj.weight * traj.total_cost();
  return out;
}

EnumerationResult enumerate_exact(const ProblemInstance& inst) {
  inst.validate();
  const ClosedForm cf(inst);
  if (inst.x0 <= cf.order_up_to(inst.horizon, inst.mean)) return enumerate_by_chain(inst);
  return enumerate_recursive(inst);
}

namespace {

struct PreparedMeasure {
  std::vector<Rational> points;
  std::vector<double> cumulative;
};

using MeasureKey = std::tuple<int, Rational, Rational>;

const PreparedMeasure& prepared_measure(const ClosedForm& cf, int s, const Rational& x,
                                        const Rational& prev_d,
                                        std::map<MeasureKey, PreparedMeasure>& cache) {
  const MeasureKey key{s, x, prev_d};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const DiscreteMeasure q = cf.worst_case_measure(s, x, prev_d);
  PreparedMeasure prep;
  Rational cum = 0;
  for (const auto& atom : q.atoms()) {
    prep.points.push_back(atom.point);
    cum += atom.mass;
    prep.cumulative.push_back(to_double(cum));
  }
  return cache.emplace(key, std::move(prep)).first->second;
}

}  // namespace

SimulationResult simulate(const ProblemInstance& inst, long runs, std::uint64_t seed,
                          int sample_limit) {
  inst.validate();
  if (runs < 1) throw std::invalid_argument("simulate requires runs >= 1");
  const ClosedForm cf(inst);
  const int T = inst.horizon;
  std::map<MeasureKey, PreparedMeasure> cache;

  SimulationResult result;
  double cost_sum = 0.0, cost_sumsq = 0.0;
  std::vector<double> d_sum(T, 0.0), d_sumsq(T, 0.0);

  for (long r = 0; r < runs; ++r) {
    CounterRng rng(seed, static_cast<std::uint64_t>(r));
    Trajectory traj;
    const bool record = static_cast<int>(result.samples.size()) < sample_limit;
    Rational y = inst.x0;
    Rational prev_d = inst.mean;
    Rational run_cost = 0;
    for (int s = T; s >= 1; --s) {
      const Rational x = cf.policy_order_level(s, y, prev_d);
      const PreparedMeasure& prep = prepared_measure(cf, s, x, prev_d, cache);
      const double u = rng.uniform();
      std::size_t pick = prep.points.size() - 1;
      for (std::size_t i = 0; i < prep.cumulative.size(); ++i) {
        if (u < prep.cumulative[i]) {
          pick = i;
          break;
        }
      }
      const Rational& d = prep.points[pick];
      const Rational cost = stage_cost(x, d, inst.backorder);
      run_cost += cost;
      const int t = T - s;  // 0-based period index
      const double dv = to_double(d);
      d_sum[t] += dv;
      d_sumsq[t] += dv * dv;
      if (record) traj.steps.push_back(TrajectoryStep{t + 1, y, x, d, cost});
      y = x - d;
      prev_d = d;
    }
    const double c = to_double(run_cost);
    cost_sum += c;
    cost_sumsq += c * c;
    if (record) result.samples.push_back(std::move(traj));
  }

  const double n = static_cast<double>(runs);
  result.cost.runs = runs;
  result.cost.mean = cost_sum / n;
  if (runs > 1) {
    const double var = std::max(0.0, (cost_sumsq - cost_sum * cost_sum / n) / (n - 1));
    result.cost.stderr_ = std::sqrt(var / n);
  }
  result.demand_mean.resize(T);
  result.demand_stderr.resize(T);
  for (int t = 0; t < T; ++t) {
    result.demand_mean[t] = d_sum[t] / n;
    if (runs > 1) {
      const double var = std::max(0.0, (d_sumsq[t] - d_sum[t] * d_sum[t] / n) / (n - 1));
      result.demand_stderr[t] = std::sqrt(var / n);
    }
  }
  return result;
}

Trajectory simulate_under(const ProblemInstance& inst, const std::vector<Rational>& demands) {
  inst.validate();
  if (static_cast<int>(demands.size()) != inst.horizon)
    throw std::invalid_argument("demand stream must supply exactly `horizon` values");
  for (const auto& d : demands)
    if (d < 0 || d > inst.cap)
      throw std::invalid_argument("demand stream value outside [0, cap]");
  const ClosedForm cf(inst);
  Trajectory traj;
  Rational y = inst.x0;
  Rational prev_d = inst.mean;
  for (int t = 1; t <= inst.horizon; ++t) {
    const int s = inst.horizon - t + 1;
    const Rational x = cf.policy_order_level(s, y, prev_d);
    const Rational& d = demands[t - 1];
    traj.steps.push_back(make_step(t, y, x, d, inst.backorder));
    y = x - d;
    prev_d = d;
  }
  return traj;
}

}  // namespace rnv
