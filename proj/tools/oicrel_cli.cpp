// oicrel: evaluate, simulate and optimize OIC redundancy allocations.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oicrel/commands.hpp"

namespace {

using namespace oicrel;

std::string join_args(int argc, char** argv) {
  std::ostringstream os;
  for (int k = 0; k < argc; ++k) os << (k ? " " : "") << argv[k];
  return os.str();
}

struct IntervalArg {
  std::vector<double> bounds;

  std::optional<Interval> get() const {
    if (bounds.empty()) return std::nullopt;
    return Interval(bounds[0], bounds[1]);
  }
};

void add_problem_flags(CLI::App* cmd, InstanceOptions& p, IntervalArg& interval) {
  cmd->add_option("--instance", p.instance, "instance JSON file")->required();
  cmd->add_option("--set", p.set, "1-based interval set index (its maximal element is r)");
  cmd->add_option("--interval", interval.bounds, "explicit r as LO HI")->expected(2);
  cmd->add_option("--objective", p.objective, "all-ready | enumerated");
  cmd->add_option("--cost-model", p.cost_model, "max-per-oic | sum");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OIC one-shot reliability and interval redundancy allocation"};
  app.require_subcommand(1);
  const std::string command_line = join_args(argc, argv);

  EvalOptions eval;
  IntervalArg eval_r, eval_expect;
  auto* c_eval = app.add_subcommand("eval", "evaluate an allocation");
  add_problem_flags(c_eval, eval.problem, eval_r);
  c_eval->add_option("--allocation", eval.allocation, "allocation file (text or JSON)")->required();
  c_eval->add_option("--expect", eval_expect.bounds, "reference LOWER UPPER")->expected(2);
  c_eval->add_option("--tolerance", eval.tolerance, "allowed deviation from --expect");
  c_eval->add_option("--out", eval.out, "output directory for the manifest");

  McOptions mc;
  IntervalArg mc_r;
  auto* c_mc = app.add_subcommand("mc", "Monte Carlo check of the closed form");
  add_problem_flags(c_mc, mc.problem, mc_r);
  c_mc->add_option("--allocation", mc.allocation, "allocation file (default: repaired empty)");
  c_mc->add_option("--trials", mc.trials, "trials per endpoint");
  c_mc->add_option("--seed", mc.seed, "master seed");
  c_mc->add_option("--threads", mc.threads, "worker threads (0 = hardware)");
  c_mc->add_option("--out", mc.out, "output directory");

  SolveOptions solve;
  IntervalArg solve_r;
  auto* c_solve = app.add_subcommand("solve", "run GA or PSO");
  add_problem_flags(c_solve, solve.problem, solve_r);
  c_solve->add_option("--solver", solve.solver, "ga | pso");
  c_solve->add_option("--params", solve.params, "params JSON file");
  c_solve->add_option("--variant", solve.variant, "gbest | lbest (pso)");
  c_solve->add_option("--preset", solve.preset, "example-one | example-two (pso)");
  c_solve->add_option("--seed", solve.seed, "master seed");
  c_solve->add_option("--runs", solve.runs, "independent runs; best-of-k is reported");
  c_solve->add_option("--out", solve.out, "output directory");

  SolveOptions ga_alias;
  IntervalArg ga_r;
  auto* c_ga = app.add_subcommand("ga", "solve --solver ga");
  add_problem_flags(c_ga, ga_alias.problem, ga_r);
  c_ga->add_option("--params", ga_alias.params, "params JSON file");
  c_ga->add_option("--seed", ga_alias.seed, "master seed");
  c_ga->add_option("--runs", ga_alias.runs, "independent runs");
  c_ga->add_option("--out", ga_alias.out, "output directory");

  SolveOptions pso_alias;
  IntervalArg pso_r;
  auto* c_pso = app.add_subcommand("pso", "solve --solver pso");
  add_problem_flags(c_pso, pso_alias.problem, pso_r);
  c_pso->add_option("--params", pso_alias.params, "params JSON file");
  c_pso->add_option("--variant", pso_alias.variant, "gbest | lbest");
  c_pso->add_option("--preset", pso_alias.preset, "example-one | example-two");
  c_pso->add_option("--seed", pso_alias.seed, "master seed");
  c_pso->add_option("--runs", pso_alias.runs, "independent runs");
  c_pso->add_option("--out", pso_alias.out, "output directory");

  SweepOptions sweep;
  IntervalArg sweep_r;
  auto* c_sweep = app.add_subcommand("sweep", "GA sensitivity to one parameter");
  add_problem_flags(c_sweep, sweep.problem, sweep_r);
  c_sweep->add_option("--param", sweep.parameter, "m_gen | p_size | p_cross | p_mutat")->required();
  c_sweep->add_option("--values", sweep.values, "parameter values")->required();
  c_sweep->add_option("--runs", sweep.repetitions, "repetitions per value");
  c_sweep->add_option("--params", sweep.params, "base GA params JSON file");
  c_sweep->add_option("--seed", sweep.seed, "master seed");
  c_sweep->add_option("--out", sweep.out, "output directory");

  CurveOptions curve;
  std::vector<double> t_range;
  auto* c_curve = app.add_subcommand("curve", "system reliability over time");
  c_curve->add_option("--instance", curve.instance, "instance JSON file")->required();
  c_curve->add_option("--L", curve.cores, "active conventional cores");
  c_curve->add_option("--oics", curve.oics, "OIC counts, one series each");
  c_curve->add_option("--element-scale", curve.element_scale, "failure rate per logical element");
  c_curve->add_option("--beta", curve.beta, "Erlang shape (default: ready OICs + 1)");
  c_curve->add_option("--t", t_range, "T_BEGIN T_END")->expected(2);
  c_curve->add_option("--steps", curve.steps, "grid intervals");
  c_curve->add_flag("--startup", curve.startup, "pre-activate every available function");
  c_curve->add_option("--out", curve.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  if (*c_eval) {
    eval.problem.interval = eval_r.get();
    eval.expect = eval_expect.get();
    eval.command_line = command_line;
    return cmd_eval(eval, std::cout, std::cerr);
  }
  if (*c_mc) {
    mc.problem.interval = mc_r.get();
    mc.command_line = command_line;
    return cmd_mc(mc, std::cout, std::cerr);
  }
  if (*c_solve || *c_ga || *c_pso) {
    SolveOptions& o = *c_solve ? solve : (*c_ga ? ga_alias : pso_alias);
    const IntervalArg& r = *c_solve ? solve_r : (*c_ga ? ga_r : pso_r);
    if (*c_ga) o.solver = "ga";
    if (*c_pso) o.solver = "pso";
    o.problem.interval = r.get();
    o.command_line = command_line;
    return cmd_solve(o, std::cout, std::cerr);
  }
  if (*c_sweep) {
    sweep.problem.interval = sweep_r.get();
    sweep.command_line = command_line;
    return cmd_sweep(sweep, std::cout, std::cerr);
  }
  if (!t_range.empty()) {
    curve.t_begin = t_range[0];
    curve.t_end = t_range[1];
  }
  curve.command_line = command_line;
  return cmd_curve(curve, std::cout, std::cerr);
}
