#pragma once

// Exact enumeration and Monte Carlo simulation of the optimal policy against
// the worst-case martingale: the pre-determined demand/stock ladders, the
// stopping-time form of the induced law, and general-x0 tree rollout.

#include <cstdint>
#include <optional>
#include <vector>

#include "rnv/closed_form.hpp"
#include "rnv/model.hpp"

namespace rnv {

// Worst-case ladder: demand rides demand_ladder (index 0 holds the initial
// mean) until it drops to 0 or reaches cap at saturation_time; the policy
// tracks stock_ladder.  stock_ladder[0] is the virtual pre-horizon level.
struct ChainSchedule {
  int saturation_time = 1;              // first time the demand ladder hits cap
  std::vector<Rational> demand_ladder;  // [0..saturation_time]
  std::vector<Rational> stock_ladder;   // [0..saturation_time]
};

// Law of the time the ladder ride ends and of the terminal jump: exit_time
// is supported on integers 1..saturation_time; terminal_jump on {0, cap}
// and only matters when the exit happens at saturation_time.
struct StoppingLaw {
  DiscreteMeasure exit_time;
  DiscreteMeasure terminal_jump;
};

struct CostEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long runs = 0;
  std::optional<Rational> exact;  // set when enumeration produced the value
};

struct SimulationResult {
  CostEstimate cost;
  std::vector<double> demand_mean;    // per period, 1-based period t-1
  std::vector<double> demand_stderr;
  std::vector<Trajectory> samples;    // first few sampled paths, weight 1
};

struct EnumerationResult {
  std::vector<Trajectory> trajectories;
  Rational expected_cost;
};

// Counter-based seedable generator: the stream is a pure function of
// (seed, stream id, counter), so parallel runs are reproducible regardless
// of scheduling.  SplitMix64-style mixing over a Weyl sequence.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  double uniform();  // [0, 1) with 53-bit resolution

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

ChainSchedule chain_schedule(const ProblemInstance& inst);
StoppingLaw stopping_law(const ChainSchedule& sched);

// Enumerates every positive-probability trajectory of the optimal policy
// against the worst-case law and the exact expected cost.  Uses the ladder
// representation when x0 <= chi (horizon <= 16), otherwise walks the
// branching recursion (horizon <= 12).
EnumerationResult enumerate_exact(const ProblemInstance& inst);

// Always walks the branching recursion; exposed so the two representations
// can be compared.  Guarded to horizon <= 12.
EnumerationResult enumerate_recursive(const ProblemInstance& inst);

// Seeded rollout of the policy, sampling each period's demand from the
// worst-case conditional measure.  Records the first sample_limit paths.
SimulationResult simulate(const ProblemInstance& inst, long runs, std::uint64_t seed,
                          int sample_limit = 0);

// Evaluates the policy against an externally supplied demand stream of
// exactly `horizon` values in [0, cap].
Trajectory simulate_under(const ProblemInstance& inst, const std::vector<Rational>& demands);

}  // namespace rnv
