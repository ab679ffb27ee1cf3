#include <cmath>
#include <map>

#include "doctest.h"
#include "rnv/closed_form.hpp"
#include "rnv/worst_case_sim.hpp"
#include "support.hpp"

using namespace rnv;
using rnv::testing::inst;

TEST_CASE("chain schedule") {
  SUBCASE("three symmetric periods") {
    const auto sched = chain_schedule(inst(frac(1, 2), frac(1), frac(1), 3, frac(0)));
    CHECK(sched.saturation_time == 2);
    CHECK(sched.demand_ladder ==
          std::vector<Rational>{frac(1, 2), frac(2, 3), frac(1)});
    CHECK(sched.stock_ladder[0] == frac(1, 10));  // band * mean / (b + T + 1)
    CHECK(sched.stock_ladder[1] == frac(1, 6));
    CHECK(sched.stock_ladder[2] == frac(1, 3));
  }
  SUBCASE("saturated mean pins the ladder at cap") {
    const auto sched = chain_schedule(inst(frac(1), frac(1), frac(1), 4, frac(0)));
    CHECK(sched.saturation_time == 1);
    CHECK(sched.demand_ladder[1] == 1);
    CHECK(sched.stock_ladder[1] == 1);
  }
  SUBCASE("low mean, two periods") {
    const auto sched = chain_schedule(inst(frac(1, 4), frac(1), frac(1), 2, frac(0)));
    CHECK(sched.saturation_time == 2);
    CHECK(sched.demand_ladder[1] == frac(1, 2));
    CHECK(sched.demand_ladder[2] == 1);
    CHECK(sched.stock_ladder[1] == 0);
    CHECK(sched.stock_ladder[2] == 0);
  }
  SUBCASE("ladders are monotone with stock below demand") {
    rnv::testing::TestRng rng(5);
    for (int round = 0; round < 60; ++round) {
      auto pi = rng.random_instance(8);
      if (pi.mean == 0) pi.mean = pi.cap;
      const auto sched = chain_schedule(pi);
      CHECK(sched.demand_ladder[sched.saturation_time] == pi.cap);
      for (int t = 1; t <= sched.saturation_time; ++t) {
        CHECK(sched.stock_ladder[t] <= sched.demand_ladder[t]);
        if (t >= 2) {
          CHECK(sched.demand_ladder[t] >= sched.demand_ladder[t - 1]);
          CHECK(sched.stock_ladder[t] >= sched.stock_ladder[t - 1]);
        }
      }
    }
  }
}

TEST_CASE("stopping law") {
  SUBCASE("three symmetric periods") {
    const auto law = stopping_law(chain_schedule(inst(frac(1, 2), frac(1), frac(1), 3, frac(0))));
    REQUIRE(law.exit_time.size() == 2);
    CHECK(law.exit_time.atoms()[0].mass == frac(1, 4));
    CHECK(law.exit_time.atoms()[1].mass == frac(3, 4));
    REQUIRE(law.terminal_jump.size() == 2);
    CHECK(law.terminal_jump.atoms()[1].point == 1);
    CHECK(law.terminal_jump.atoms()[1].mass == frac(2, 3));
  }
  SUBCASE("saturated mean exits immediately upward") {
    const auto law = stopping_law(chain_schedule(inst(frac(1), frac(1), frac(1), 3, frac(0))));
    REQUIRE(law.exit_time.size() == 1);
    CHECK(law.exit_time.atoms()[0].point == 1);
    REQUIRE(law.terminal_jump.size() == 1);
    CHECK(law.terminal_jump.atoms()[0].point == 1);
  }
  SUBCASE("low mean, two periods") {
    const auto law = stopping_law(chain_schedule(inst(frac(1, 4), frac(1), frac(1), 2, frac(0))));
    CHECK(law.exit_time.atoms()[0].mass == frac(1, 2));
    CHECK(law.exit_time.atoms()[1].mass == frac(1, 2));
    CHECK(law.terminal_jump.atoms()[1].mass == frac(1, 2));
  }
  SUBCASE("zero mean collapses to an immediate drop") {
    const auto law = stopping_law(chain_schedule(inst(frac(0), frac(1), frac(1), 4, frac(0))));
    REQUIRE(law.exit_time.size() == 1);
    CHECK(law.exit_time.atoms()[0].point == 1);
    CHECK(law.exit_time.atoms()[0].mass == 1);
  }
}

TEST_CASE("exact enumeration") {
  SUBCASE("three symmetric periods decompose into three outcomes") {
    const auto res = enumerate_exact(inst(frac(1, 2), frac(1), frac(1), 3, frac(0)));
    REQUIRE(res.trajectories.size() == 3);
    std::map<Rational, std::pair<Rational, int>> by_cost;  // cost -> (weight, count)
    for (const auto& traj : res.trajectories) {
      by_cost[traj.total_cost()].first += traj.weight;
      by_cost[traj.total_cost()].second += 1;
    }
    REQUIRE(by_cost.count(frac(1, 2)) == 1);
    REQUIRE(by_cost.count(frac(7, 6)) == 1);
    CHECK(by_cost[frac(1, 2)].first == frac(1, 4));
    CHECK(by_cost[frac(7, 6)].first == frac(3, 4));
    CHECK(by_cost[frac(7, 6)].second == 2);
    CHECK(res.expected_cost == 1);
  }
  SUBCASE("saturated mean has a single free path") {
    const auto res = enumerate_exact(inst(frac(1), frac(1), frac(1), 4, frac(1, 2)));
    REQUIRE(res.trajectories.size() == 1);
    CHECK(res.trajectories[0].total_cost() == 0);
    CHECK(res.expected_cost == 0);
  }
  SUBCASE("full inventory, low mean: all-or-nothing demand") {
    const auto res = enumerate_exact(inst(frac(1, 4), frac(1), frac(2), 5, frac(1)));
    REQUIRE(res.trajectories.size() == 2);
    std::map<Rational, Rational> weight_by_cost;
    for (const auto& traj : res.trajectories) weight_by_cost[traj.total_cost()] += traj.weight;
    CHECK(weight_by_cost[frac(0)] == frac(1, 4));
    CHECK(weight_by_cost[frac(5)] == frac(3, 4));
    CHECK(res.expected_cost == frac(15, 4));
  }
  SUBCASE("expected cost equals the closed form") {
    rnv::testing::TestRng rng(23);
    for (int round = 0; round < 40; ++round) {
      const auto pi = rng.random_instance(8);
      const auto res = enumerate_exact(pi);
      CHECK(res.expected_cost == ClosedForm(pi).solve().value_at_x0);
      Rational mass = 0;
      for (const auto& traj : res.trajectories) {
        mass += traj.weight;
        validate_trajectory(traj, pi);
      }
      CHECK(mass == 1);
    }
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(enumerate_exact(inst(frac(1, 2), frac(1), frac(1), 17, frac(0))),
                    guard_error);
    CHECK_THROWS_AS(enumerate_recursive(inst(frac(1, 2), frac(1), frac(1), 13, frac(0))),
                    guard_error);
  }
}

TEST_CASE("ladder and branching enumerations induce the same law") {
  rnv::testing::TestRng rng(41);
  int compared = 0;
  for (int round = 0; round < 80 && compared < 40; ++round) {
    auto pi = rng.random_instance(8);
    pi.x0 = 0;  // ladder representation applies below the target
    const auto chain = enumerate_exact(pi);
    const auto tree = enumerate_recursive(pi);
    ++compared;
    auto key = [](const Trajectory& t) {
      std::vector<Rational> demands;
      for (const auto& s : t.steps) demands.push_back(s.d);
      return demands;
    };
    std::map<std::vector<Rational>, std::pair<Rational, Rational>> chain_law, tree_law;
    for (const auto& t : chain.trajectories) chain_law[key(t)] = {t.weight, t.total_cost()};
    for (const auto& t : tree.trajectories) {
      auto& slot = tree_law[key(t)];
      slot.first += t.weight;
      slot.second = t.total_cost();
    }
    CHECK(chain_law == tree_law);
    CHECK(chain.expected_cost == tree.expected_cost);
  }
  REQUIRE(compared >= 40);
}

TEST_CASE("enumerated per-period demand expectations equal the mean exactly") {
  rnv::testing::TestRng rng(73);
  for (int round = 0; round < 30; ++round) {
    const auto pi = rng.random_instance(7);
    const auto res = enumerate_exact(pi);
    for (int t = 0; t < pi.horizon; ++t) {
      Rational expectation = 0;
      for (const auto& traj : res.trajectories) expectation += traj.weight * traj.steps[t].d;
      CHECK(expectation == pi.mean);
    }
  }
}

TEST_CASE("martingale consistency of enumerated branching") {
  // At every interior node, the children's demand values average to the
  // parent demand under the conditional worst-case measure.
  const auto pi = inst(frac(2, 5), frac(1), frac(3, 2), 5, frac(1, 5));
  const ClosedForm cf(pi);
  Rational prev = pi.mean;
  for (int s = pi.horizon; s >= 1; --s) {
    const Rational x = cf.policy_order_level(s, frac(0), prev);
    const auto q = cf.worst_case_measure(s, x, prev);
    CHECK(q.mean() == prev);
    prev = q.atoms().back().point;  // follow the upper branch
  }
}

TEST_CASE("counter rng is deterministic and stream-independent") {
  CounterRng a(7, 0), b(7, 0), c(7, 1);
  std::vector<std::uint64_t> seq_a, seq_b, seq_c;
  for (int i = 0; i < 16; ++i) {
    seq_a.push_back(a.next());
    seq_b.push_back(b.next());
    seq_c.push_back(c.next());
  }
  CHECK(seq_a == seq_b);
  CHECK(seq_a != seq_c);
  CounterRng u(123, 5);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("simulation agrees with the exact value") {
  const auto pi = inst(frac(1, 2), frac(1), frac(1), 3, frac(0));
  const auto res = simulate(pi, 20000, 42, 3);
  CHECK(std::fabs(res.cost.mean - 1.0) <= 3.0 * res.cost.stderr_);
  REQUIRE(res.demand_mean.size() == 3);
  for (int t = 0; t < 3; ++t)
    CHECK(std::fabs(res.demand_mean[t] - 0.5) <= 4.0 * res.demand_stderr[t]);
  REQUIRE(res.samples.size() == 3);
  for (const auto& traj : res.samples) validate_trajectory(traj, pi);

  SUBCASE("same seed reproduces, different seed varies") {
    const auto res2 = simulate(pi, 2000, 42);
    const auto res3 = simulate(pi, 2000, 43);
    const auto res1 = simulate(pi, 2000, 42);
    CHECK(res1.cost.mean == res2.cost.mean);
    CHECK(res1.cost.mean != res3.cost.mean);
  }
}

TEST_CASE("zero mean simulation is exactly free from empty stock") {
  const auto res = simulate(inst(frac(0), frac(1), frac(1), 4, frac(0)), 50, 9);
  CHECK(res.cost.mean == 0.0);
  CHECK(res.cost.stderr_ == 0.0);
}

TEST_CASE("rollout under an external demand stream") {
  SUBCASE("all zeros from empty stock is free when the target starts at zero") {
    const auto traj = simulate_under(inst(frac(1, 4), frac(1), frac(1), 2, frac(0)),
                                     {frac(0), frac(0)});
    CHECK(traj.total_cost() == 0);
    const auto traj0 = simulate_under(inst(frac(0), frac(1), frac(1), 3, frac(0)),
                                      {frac(0), frac(0), frac(0)});
    CHECK(traj0.total_cost() == 0);
  }
  SUBCASE("all-cap stream against the symmetric two-period policy") {
    const auto traj = simulate_under(inst(frac(1, 2), frac(1), frac(1), 2, frac(0)),
                                     {frac(1), frac(1)});
    REQUIRE(traj.steps.size() == 2);
    CHECK(traj.steps[0].x == frac(1, 3));
    CHECK(traj.steps[1].x == 1);
    CHECK(traj.total_cost() == frac(2, 3));
  }
  SUBCASE("replaying a ladder realization reproduces its enumerated cost") {
    const auto pi = inst(frac(1, 2), frac(1), frac(1), 3, frac(0));
    const auto sched = chain_schedule(pi);
    const auto traj = simulate_under(
        pi, {sched.demand_ladder[1], frac(1), frac(1)});  // exit at saturation, jump up
    const auto exact = enumerate_exact(pi);
    bool matched = false;
    for (const auto& cand : exact.trajectories) {
      if (cand.steps[0].d == sched.demand_ladder[1] && cand.steps[1].d == 1) {
        matched = true;
        CHECK(traj.total_cost() == cand.total_cost());
        for (std::size_t i = 0; i < cand.steps.size(); ++i) {
          CHECK(traj.steps[i].x == cand.steps[i].x);
          CHECK(traj.steps[i].y == cand.steps[i].y);
        }
      }
    }
    CHECK(matched);
  }
  SUBCASE("rejects out-of-range demand") {
    CHECK_THROWS_AS(simulate_under(inst(frac(1, 2), frac(1), frac(1), 2, frac(0)),
                                   {frac(1), frac(3, 2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_under(inst(frac(1, 2), frac(1), frac(1), 2, frac(0)), {frac(1)}),
                    std::invalid_argument);
  }
}

TEST_CASE("absorption in enumerated trajectories") {
  rnv::testing::TestRng rng(59);
  for (int round = 0; round < 30; ++round) {
    const auto pi = rng.random_instance(7);
    for (const auto& traj : enumerate_exact(pi).trajectories) {
      bool dropped = false, saturated = false;
      for (std::size_t i = 0; i < traj.steps.size(); ++i) {
        const auto& step = traj.steps[i];
        if (dropped) {
          CHECK(step.d == 0);
          CHECK(step.x == traj.steps[i - 1].x);
        }
        if (saturated) {
          CHECK(step.d == pi.cap);
          CHECK(step.x == pi.cap);
          CHECK(step.cost == 0);
        }
        if (step.d == 0) dropped = true;
        if (step.d == pi.cap) saturated = true;
      }
    }
  }
}
