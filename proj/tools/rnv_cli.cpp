// Command-line front door: compute the closed-form policy, verify it against
// the grid DP oracle, simulate or enumerate the worst case, and produce
// comparison/asymptotics reports.  All rational inputs are "p/q" strings;
// decimal inputs are rejected.
//
// Exit codes: 0 success, 1 guard violation (horizon too large for an exact
// enumeration or closure grid), 2 invalid arguments.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rnv/asymptotics.hpp"
#include "rnv/closed_form.hpp"
#include "rnv/dp_oracle.hpp"
#include "rnv/independent.hpp"
#include "rnv/worst_case_sim.hpp"

using json = nlohmann::ordered_json;
using namespace rnv;

namespace {

constexpr const char* kSchema = "robust-newsvendor/1";

struct InstanceArgs {
  std::string mu = "0";
  std::string cap = "1";
  std::string b = "1";
  int horizon = 1;
  std::string x0 = "0";
  std::string holding = "1";
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args, bool with_holding = true) {
  cmd->add_option("--mu", args.mu, "mean demand, rational \"p/q\"")->required();
  cmd->add_option("--cap", args.cap, "demand support bound, rational")->required();
  cmd->add_option("--b", args.b, "backorder cost per unit, rational")->required();
  cmd->add_option("--horizon", args.horizon, "number of periods")->required();
  cmd->add_option("--x0", args.x0, "initial inventory, rational");
  if (with_holding) {
    cmd->add_option("--holding", args.holding,
                    "holding cost h, rational; b and all costs are divided by h");
  }
}

ProblemInstance build_instance(const InstanceArgs& args) {
  const Rational holding = parse_rational(args.holding);
  if (!(holding > 0)) throw std::invalid_argument("holding cost must be positive");
  ProblemInstance inst{parse_rational(args.mu), parse_rational(args.cap),
                       parse_rational(args.b) / holding, args.horizon,
                       parse_rational(args.x0)};
  inst.validate();
  return inst;
}

json instance_json(const InstanceArgs& args, const ProblemInstance& inst) {
  json j;
  j["mu"] = to_fraction_string(inst.mean);
  j["cap"] = to_fraction_string(inst.cap);
  j["b"] = to_fraction_string(inst.backorder);
  j["horizon"] = inst.horizon;
  j["x0"] = to_fraction_string(inst.x0);
  j["holding"] = args.holding;
  return j;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  out << text;
}

void emit_json(const json& j, const std::string& out_path) { emit(j.dump(2) + "\n", out_path); }

std::string trajectories_csv(const std::vector<Trajectory>& trajectories) {
  std::ostringstream out;
  out << "run,t,y,x,d,cost,weight\n";
  for (std::size_t run = 0; run < trajectories.size(); ++run) {
    const auto& traj = trajectories[run];
    for (const auto& step : traj.steps) {
      out << run << ',' << step.t << ',' << to_fraction_string(step.y) << ','
          << to_fraction_string(step.x) << ',' << to_fraction_string(step.d) << ','
          << to_fraction_string(step.cost) << ',' << to_fraction_string(traj.weight) << '\n';
    }
  }
  return out.str();
}

json trajectory_json(const Trajectory& traj) {
  json steps = json::array();
  for (const auto& step : traj.steps) {
    steps.push_back({{"t", step.t},
                     {"y", to_fraction_string(step.y)},
                     {"x", to_fraction_string(step.x)},
                     {"d", to_fraction_string(step.d)},
                     {"cost", to_fraction_string(step.cost)}});
  }
  json j;
  j["weight"] = to_fraction_string(traj.weight);
  j["total_cost"] = to_fraction_string(traj.total_cost());
  j["steps"] = std::move(steps);
  return j;
}

Grid grid_from_spec(const ProblemInstance& inst, const std::string& spec) {
  if (spec == "closure") return breakpoint_closure_grid(inst);
  if (spec.rfind("uniform:", 0) == 0) {
    const long n = std::stol(spec.substr(8));
    if (n < 1) throw std::invalid_argument("uniform grid needs at least one interval");
    std::vector<Rational> points;
    for (long i = 0; i <= n; ++i) points.push_back(inst.cap * frac(i, n));
    std::vector<Rational> order = points;
    order.push_back(inst.x0);
    return Grid::make(points, order, inst.cap);
  }
  throw std::invalid_argument("grid must be 'closure' or 'uniform:N'");
}

std::vector<Rational> read_demand_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open demand file: " + path);
  std::vector<Rational> demands;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    demands.push_back(parse_rational(line));
  }
  return demands;
}

// --- subcommands -----------------------------------------------------------

int run_policy(const InstanceArgs& args, const std::string& out_path) {
  const ProblemInstance inst = build_instance(args);
  const ClosedForm cf(inst);
  const PolicyReport report = cf.solve();
  const ChainSchedule sched = chain_schedule(inst);
  json j;
  j["schema"] = kSchema;
  j["command"] = "policy";
  j["instance"] = instance_json(args, inst);
  j["chi"] = to_fraction_string(report.chi);
  j["opt"] = to_fraction_string(report.opt);
  j["value_at_x0"] = to_fraction_string(report.value_at_x0);
  j["first_order_level"] = to_fraction_string(report.first_order_level);
  json ladder = json::array();
  for (const auto& d : sched.demand_ladder) ladder.push_back(to_fraction_string(d));
  j["support_points"] = std::move(ladder);
  emit_json(j, out_path);
  return 0;
}

int run_verify(const InstanceArgs& args, const std::string& grid_spec,
               const std::string& out_path) {
  const ProblemInstance inst = build_instance(args);
  const Grid grid = grid_from_spec(inst, grid_spec);
  const MartingaleDpResult dp = solve_martingale_dp(inst, grid);
  const ClosedForm cf(inst);

  json stages = json::array();
  for (int s = 1; s <= inst.horizon; ++s) {
    Rational max_delta = 0;
    for (std::size_t zi = 0; zi < dp.tables.order_points().size(); ++zi) {
      for (std::size_t mi = 0; mi < dp.tables.means().size(); ++mi) {
        Rational delta = dp.tables.post_order(s, zi, mi) -
                         cf.post_order_cost(s, dp.tables.order_points()[zi],
                                            dp.tables.means()[mi]);
        if (delta < 0) delta = -delta;
        if (delta > max_delta) max_delta = delta;
      }
    }
    stages.push_back(
        {{"periods_remaining", s}, {"max_abs_delta", to_fraction_string(max_delta)}});
  }

  const Rational closed_value = cf.solve().value_at_x0;
  Rational root_delta = dp.value - closed_value;
  if (root_delta < 0) root_delta = -root_delta;

  json j;
  j["schema"] = kSchema;
  j["command"] = "verify";
  j["instance"] = instance_json(args, inst);
  j["grid"] = {{"kind", grid_spec},
               {"demand_points", dp.tables.demand_points().size()},
               {"order_points", dp.tables.order_points().size()}};
  j["stages"] = std::move(stages);
  j["dp_value"] = to_fraction_string(dp.value);
  j["closed_form_value"] = to_fraction_string(closed_value);
  j["delta"] = to_fraction_string(root_delta);
  if (inst.x0 == 0) {
    const Rational ind_dp = solve_independent_dp(inst, grid);
    const Rational ind_cf = ind_policy_value(inst).opt;
    Rational ind_delta = ind_dp - ind_cf;
    if (ind_delta < 0) ind_delta = -ind_delta;
    j["independent"] = {{"dp_value", to_fraction_string(ind_dp)},
                        {"closed_form_value", to_fraction_string(ind_cf)},
                        {"delta", to_fraction_string(ind_delta)}};
  }
  emit_json(j, out_path);
  return 0;
}

int run_simulate(const InstanceArgs& args, long runs, std::uint64_t seed, int sample,
                 const std::string& demand_file, const std::string& traj_out,
                 const std::string& format, const std::string& out_path) {
  const ProblemInstance inst = build_instance(args);

  if (!demand_file.empty()) {
    const Trajectory traj = simulate_under(inst, read_demand_file(demand_file));
    if (format == "csv") {
      emit(trajectories_csv({traj}), out_path);
    } else {
      json j;
      j["schema"] = kSchema;
      j["command"] = "simulate";
      j["instance"] = instance_json(args, inst);
      j["demand_file"] = demand_file;
      j["trajectory"] = trajectory_json(traj);
      emit_json(j, out_path);
    }
    return 0;
  }

  SimulationResult result = simulate(inst, runs, seed, sample);
  try {
    result.cost.exact = enumerate_exact(inst).expected_cost;
  } catch (const guard_error&) {
    // Horizon too large to enumerate; the estimate stands alone.
  }
  json j;
  j["schema"] = kSchema;
  j["command"] = "simulate";
  j["instance"] = instance_json(args, inst);
  j["runs"] = result.cost.runs;
  j["seed"] = seed;
  j["mean"] = result.cost.mean;
  j["stderr"] = result.cost.stderr_;
  if (result.cost.exact.has_value()) j["exact"] = to_fraction_string(*result.cost.exact);
  j["demand_mean"] = result.demand_mean;
  j["demand_stderr"] = result.demand_stderr;
  emit_json(j, out_path);
  if (!traj_out.empty()) emit(trajectories_csv(result.samples), traj_out);
  return 0;
}

int run_enumerate(const InstanceArgs& args, const std::string& format,
                  const std::string& out_path) {
  const ProblemInstance inst = build_instance(args);
  const EnumerationResult result = enumerate_exact(inst);
  if (format == "csv") {
    emit(trajectories_csv(result.trajectories), out_path);
    return 0;
  }
  json j;
  j["schema"] = kSchema;
  j["command"] = "enumerate";
  j["instance"] = instance_json(args, inst);
  j["expected_cost"] = to_fraction_string(result.expected_cost);
  json trajs = json::array();
  for (const auto& traj : result.trajectories) trajs.push_back(trajectory_json(traj));
  j["trajectories"] = std::move(trajs);
  emit_json(j, out_path);
  return 0;
}

int run_compare(const InstanceArgs& args, const std::string& out_path) {
  const ProblemInstance inst = build_instance(args);
  const PolicyReport mar = ClosedForm(inst).solve();
  const IndReport ind = ind_policy_value(inst);

  json j;
  j["schema"] = kSchema;
  j["command"] = "compare";
  j["instance"] = instance_json(args, inst);
  j["opt_mar"] = to_fraction_string(mar.opt);
  j["chi_mar"] = to_fraction_string(mar.chi);
  j["value_at_x0_mar"] = to_fraction_string(mar.value_at_x0);
  j["opt_ind"] = to_fraction_string(ind.opt);
  j["chi_ind"] = to_fraction_string(ind.base_stock);
  if (ind.ratio_mar_over_ind.has_value()) {
    j["ratio"] = to_fraction_string(*ind.ratio_mar_over_ind);
    j["ratio_limit"] = ratio_limit(inst);
  } else {
    j["ratio"] = "degenerate";
  }
  if (inst.mean > 0 && inst.mean * (inst.backorder + 1) < inst.cap) {
    const Rational full_mar = inst.horizon * (inst.cap - inst.mean);
    const Rational full_ind = full_inventory_value(inst);
    j["full_inventory"] = {{"mar", to_fraction_string(full_mar)},
                           {"ind", to_fraction_string(full_ind)},
                           {"ratio", to_double(full_mar / full_ind)}};
  } else {
    j["full_inventory"] = nullptr;
  }
  emit_json(j, out_path);
  return 0;
}

int run_asymptotics(const InstanceArgs& args, std::vector<int> horizons,
                    const std::string& format, const std::string& out_path) {
  const ProblemInstance inst = build_instance(args);
  if (horizons.empty()) horizons = {100, 400, 1600};
  const auto entries = convergence_report(inst, horizons);

  if (format == "csv") {
    std::ostringstream out;
    out << "horizon,t,alpha,demand_T,demand_inf,stock_T,stock_inf\n";
    const double lam_inf = limit_law(inst).saturation_fraction;
    for (int T : horizons) {
      ProblemInstance h = inst;
      h.horizon = T;
      h.x0 = 0;
      const ChainSchedule sched = chain_schedule(h);
      for (int t = 1; t <= sched.saturation_time; ++t) {
        const double alpha = static_cast<double>(t) / T;
        const auto [d_inf, x_inf] = limit_paths(h, std::min(alpha, lam_inf));
        out << T << ',' << t << ',' << alpha << ',' << to_double(sched.demand_ladder[t]) << ','
            << d_inf << ',' << to_double(sched.stock_ladder[t]) << ',' << x_inf << '\n';
      }
    }
    emit(out.str(), out_path);
    return 0;
  }

  json j;
  j["schema"] = kSchema;
  j["command"] = "asymptotics";
  j["instance"] = instance_json(args, inst);
  j["horizons"] = horizons;
  json rows = json::array();
  for (const auto& e : entries) {
    rows.push_back({{"horizon", e.horizon},
                    {"sup_dX", e.sup_dX},
                    {"sup_dD", e.sup_dD},
                    {"sup_dZ", e.sup_dZ},
                    {"gamma_frac", e.gamma_frac},
                    {"lambda_frac", e.lambda_frac},
                    {"ks", e.ks}});
  }
  j["entries"] = std::move(rows);
  emit_json(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributionally robust multi-stage newsvendor with martingale demand"};
  app.require_subcommand(1);

  InstanceArgs args;
  std::string out_path;
  std::string format = "json";
  std::string grid_spec = "closure";
  std::string demand_file;
  std::string traj_out;
  long runs = 10000;
  std::uint64_t seed = 0;
  int sample = 100;
  std::vector<int> horizons;

  auto* policy = app.add_subcommand("policy", "closed-form policy and value");
  add_instance_options(policy, args);
  policy->add_option("--out", out_path, "write the report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "grid DP oracle vs closed form");
  add_instance_options(verify, args, /*with_holding=*/false);
  verify->add_option("--grid", grid_spec, "closure (exact) or uniform:N (approximate)");
  verify->add_option("--out", out_path, "write the report here instead of stdout");

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo against the worst case");
  add_instance_options(simulate_cmd, args);
  simulate_cmd->add_option("--runs", runs, "number of seeded runs");
  simulate_cmd->add_option("--seed", seed, "base seed; run r uses stream (seed, r)");
  simulate_cmd->add_option("--sample", sample, "record up to this many sampled paths");
  simulate_cmd->add_option("--demand-file", demand_file,
                           "CSV with one rational demand per line; replays the policy");
  simulate_cmd->add_option("--traj-out", traj_out, "write sampled trajectories as CSV here");
  simulate_cmd->add_option("--format", format, "json or csv (csv applies to --demand-file)");
  simulate_cmd->add_option("--out", out_path, "write the report here instead of stdout");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "exact trajectory enumeration");
  add_instance_options(enumerate_cmd, args);
  enumerate_cmd->add_option("--format", format, "json or csv");
  enumerate_cmd->add_option("--out", out_path, "write the table here instead of stdout");

  auto* compare = app.add_subcommand("compare", "martingale vs independent demand");
  add_instance_options(compare, args);
  compare->add_option("--out", out_path, "write the report here instead of stdout");

  auto* asym = app.add_subcommand("asymptotics", "weak-convergence diagnostics");
  add_instance_options(asym, args, /*with_holding=*/false);
  asym->add_option("--horizons", horizons, "ascending horizon ladder (default 100,400,1600)")
      ->delimiter(',');
  asym->add_option("--format", format, "json or csv (csv emits the rescaled paths)");
  asym->add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (policy->parsed()) return run_policy(args, out_path);
    if (verify->parsed()) return run_verify(args, grid_spec, out_path);
    if (simulate_cmd->parsed())
      return run_simulate(args, runs, seed, sample, demand_file, traj_out, format, out_path);
    if (enumerate_cmd->parsed()) return run_enumerate(args, format, out_path);
    if (compare->parsed()) return run_compare(args, out_path);
    if (asym->parsed()) return run_asymptotics(args, horizons, format, out_path);
  } catch (const guard_error& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
