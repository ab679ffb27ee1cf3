#pragma once

// Core vocabulary of the inventory model: problem instances, finite discrete
// measures, trajectories, and the per-period cost.

#include <stdexcept>
#include <string>
#include <vector>

#include "rnv/rational.hpp"

namespace rnv {

// Thrown when an enumeration or grid guard is exceeded (CLI exit code 1, as
// opposed to invalid arguments which map to exit code 2).
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem primitives.  Holding cost is normalized to 1; `backorder` is the
// per-unit backorder cost b, `cap` the demand support bound U, `mean` the
// initial mean demand, `horizon` the number of periods, `x0` the initial
// inventory.
struct ProblemInstance {
  Rational mean;
  Rational cap;
  Rational backorder;
  int horizon = 1;
  Rational x0;

  // Throws std::invalid_argument naming the violated invariant.
  void validate() const;
};

// b*(d - x)_+ + (x - d)_+, exact.
Rational stage_cost(const Rational& level, const Rational& demand, const Rational& backorder);

// Finite probability measure with strictly increasing rational support.
// Construction merges coincident points, drops zero-mass atoms, and verifies
// that the masses sum to exactly 1.
class DiscreteMeasure {
 public:
  struct Atom {
    Rational point;
    Rational mass;
  };

  static DiscreteMeasure make(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  Rational mean() const;
  std::size_t size() const { return atoms_.size(); }

  bool operator==(const DiscreteMeasure& other) const;

 private:
  std::vector<Atom> atoms_;
};

inline Rational measure_mean(const DiscreteMeasure& m) { return m.mean(); }

// One realized period: pre-order level y, post-order level x, demand d, and
// the exact stage cost.
struct TrajectoryStep {
  int t = 0;
  Rational y;
  Rational x;
  Rational d;
  Rational cost;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  Rational weight = 1;  // probability weight; 1 for sampled paths

  Rational total_cost() const;
};

// Checks the ordering and range invariants of a trajectory against an
// instance; throws std::invalid_argument on the first violation.
void validate_trajectory(const Trajectory& traj, const ProblemInstance& inst);

}  // namespace rnv
