#pragma once

// Subcommands behind the oicrel CLI. Each returns a process exit code:
// 0 success, 2 input error, 3 domain-invariant violation, 4 non-convergence.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oicrel/ga.hpp"
#include "oicrel/io.hpp"
#include "oicrel/mc_oracle.hpp"
#include "oicrel/oss.hpp"
#include "oicrel/pso.hpp"
#include "oicrel/random.hpp"
#include "oicrel/rap.hpp"
#include "oicrel/report.hpp"

namespace oicrel {

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitInvariant = 3, kExitNonConvergence = 4 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidConfig:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::EmptySet:
    case ErrorCode::NegativeTime:
      return kExitInput;
    case ErrorCode::NonConvergence:
      return kExitNonConvergence;
    default:
      return kExitInvariant;
  }
}

/// Runs `body`, turning exceptions into an exit code and a message on `err`.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

/// Options shared by every command that works on an instance.
struct InstanceOptions {
  std::string instance;
  std::size_t set = 1;  ///< 1-based index into the instance's r_sets
  std::optional<Interval> interval;  ///< overrides the set's maximal element
  std::optional<std::string> objective;
  std::optional<std::string> cost_model;
};

struct LoadedProblem {
  RapInstance inst;
  Interval r;
};

inline LoadedProblem load_problem(const InstanceOptions& o) {
  LoadedProblem lp{load_instance(o.instance), Interval{}};
  if (o.objective) lp.inst.objective = parse_objective(*o.objective);
  if (o.cost_model) lp.inst.cost_model = parse_cost_model(*o.cost_model);
  if (o.interval) {
    lp.r = *o.interval;
  } else {
    if (o.set < 1 || o.set > lp.inst.r_sets.size()) {
      throw Error(ErrorCode::InvalidConfig,
                  "--set must lie in 1.." + std::to_string(lp.inst.r_sets.size()));
    }
    lp.r = max_interval_in_set(lp.inst.r_sets[o.set - 1], ComparePolicy::Combined);
  }
  if (lp.r.lo() < 0.0 || lp.r.hi() > 1.0) {
    throw Error(ErrorCode::InvalidConfig, "mission reliability outside [0,1]");
  }
  return lp;
}

inline nlohmann::json instance_options_json(const InstanceOptions& o, const Interval& r) {
  nlohmann::json j{{"instance", o.instance}, {"set", o.set}, {"r", interval_json(r)}};
  if (o.interval) j["interval_override"] = true;
  if (o.objective) j["objective"] = *o.objective;
  if (o.cost_model) j["cost_model"] = *o.cost_model;
  return j;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

/// Replay record written next to every output.
struct RunManifest {
  std::string command_line;
  std::string command;
  nlohmann::json options;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  double wall_seconds = 0.0;
  nlohmann::json results;

  nlohmann::json to_json() const {
    return {{"command_line", command_line},
            {"command", command},
            {"options", options},
            {"params", params},
            {"seed", seed},
            {"generator", kGeneratorName},
            {"toolkit_version", kToolkitVersion},
            {"outputs", outputs},
            {"wall_seconds", wall_seconds},
            {"written_at", utc_timestamp()},
            {"results", results}};
  }

  void write(const std::filesystem::path& dir) const {
    write_atomic(dir / "manifest.json", to_json().dump(2) + "\n");
  }
};

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline std::ostream& fixed6(std::ostream& os) { return os << std::fixed << std::setprecision(6); }

// ---------------------------------------------------------------------------
// eval

struct EvalOptions {
  InstanceOptions problem;
  std::string allocation;
  std::optional<Interval> expect;  ///< reference [lower, upper] to compare against
  double tolerance = 0.01;
  std::string out;
  std::string command_line;
};

inline int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    const LoadedProblem lp = load_problem(o.problem);
    const LoadedAllocation la = allocation_from_text(read_text(o.allocation), lp.inst,
                                                     lp.r.center());
    const IntervalFitness fit = evaluate(lp.inst, la.alloc, lp.r);
    RapInstance other = lp.inst;
    other.objective = lp.inst.objective == ObjectiveForm::AllReady ? ObjectiveForm::Enumerated
                                                                   : ObjectiveForm::AllReady;
    const IntervalFitness alt = evaluate(other, la.alloc, lp.r);

    fixed6(out);
    out << "r            " << lp.r << '\n';
    out << "allocation   " << format_allocation(la.alloc)
        << (la.source == AllocationSource::Placed ? "  (A placed by place_copies)" : "")
        << '\n';
    out << "cost         " << std::setprecision(0) << fit.cost << " (budget " << lp.inst.budget
        << ", " << to_string(lp.inst.cost_model) << ")  feasible "
        << (fit.feasible ? "yes" : "no") << '\n';
    fixed6(out);
    out << "S lower      " << fit.value.lo() << '\n';
    out << "S upper      " << fit.value.hi() << '\n';
    out << "objective    " << to_string(lp.inst.objective) << " (" << to_string(other.objective)
        << ": " << alt.value.lo() << " / " << alt.value.hi() << ")\n";

    nlohmann::json results{{"cost", fit.cost},
                           {"feasible", fit.feasible},
                           {"value", interval_json(fit.value)},
                           {"objective", to_string(lp.inst.objective)},
                           {"alternate_objective", to_string(other.objective)},
                           {"alternate_value", interval_json(alt.value)},
                           {"allocation", allocation_json(la.alloc)},
                           {"a_source", la.source == AllocationSource::Placed ? "place_copies"
                                                                                 : "file"}};
    if (o.expect) {
      const double d_lo = fit.value.lo() - o.expect->lo();
      const double d_hi = fit.value.hi() - o.expect->hi();
      const bool within = std::abs(d_lo) <= o.tolerance && std::abs(d_hi) <= o.tolerance;
      out << "reference    " << o.expect->lo() << " / " << o.expect->hi() << "  deviation "
          << d_lo << " / " << d_hi << "  " << (within ? "WITHIN" : "OUTSIDE") << " "
          << o.tolerance << '\n';
      results["reference"] = interval_json(*o.expect);
      results["deviation"] = {d_lo, d_hi};
      results["within_tolerance"] = within;
      results["tolerance"] = o.tolerance;
      if (!within) {
        results["deviation_note"] =
            "the reference A placement is not stated; A here comes from " +
            std::string(la.source == AllocationSource::Placed ? "place_copies" : "the file");
      }
    }
    if (!o.out.empty()) {
      RunManifest man;
      man.command_line = o.command_line;
      man.command = "eval";
      man.options = instance_options_json(o.problem, lp.r);
      man.options["allocation"] = o.allocation;
      man.outputs = {"manifest.json"};
      man.results = results;
      man.wall_seconds = seconds_since(start);
      man.write(o.out);
    }
    return int(kExitOk);
  });
}

// ---------------------------------------------------------------------------
// mc

struct McOptions {
  InstanceOptions problem;
  std::string allocation;  ///< empty: the repaired empty allocation
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
  std::string command_line;
};

inline int cmd_mc(const McOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    const LoadedProblem lp = load_problem(o.problem);
    const Allocation alloc =
        o.allocation.empty()
            ? repair(lp.inst, empty_allocation(lp.inst), lp.r.center())
            : allocation_from_text(read_text(o.allocation), lp.inst, lp.r.center()).alloc;
    const OssConfig cfg = make_config(lp.inst, alloc, lp.r);

    nlohmann::json results = nlohmann::json::array();
    bool all_agree = true;
    fixed6(out);
    out << "allocation " << format_allocation(alloc) << "\n";
    out << "endpoint  r         closed     mc_mean    stderr     verdict\n";
    const std::pair<const char*, double> points[] = {{"lower", lp.r.lo()}, {"upper", lp.r.hi()}};
    for (std::size_t k = 0; k < 2; ++k) {
      const double closed = system_reliability(cfg, points[k].second);
      const McEstimate est =
          simulate(cfg, points[k].second, o.trials, derive_seed(o.seed, k), o.threads);
      const bool ok = agrees(est, closed);
      all_agree = all_agree && ok;
      out << std::left << std::setw(10) << points[k].first << std::setw(10) << points[k].second
          << std::setw(11) << closed << std::setw(11) << est.mean << std::setw(11)
          << est.std_error << (ok ? "AGREE" : "DISAGREE") << '\n';
      results.push_back({{"endpoint", points[k].first},
                         {"r", points[k].second},
                         {"closed_form", closed},
                         {"mc_mean", est.mean},
                         {"mc_stderr", est.std_error},
                         {"trials", est.trials},
                         {"seed", est.seed},
                         {"agree", ok}});
    }
    if (!o.out.empty()) {
      RunManifest man;
      man.command_line = o.command_line;
      man.command = "mc";
      man.options = instance_options_json(o.problem, lp.r);
      man.options["allocation"] = o.allocation;
      man.options["trials"] = o.trials;
      man.seed = o.seed;
      man.outputs = {"manifest.json"};
      man.results = results;
      man.wall_seconds = seconds_since(start);
      man.write(o.out);
    }
    return all_agree ? int(kExitOk) : int(kExitInvariant);
  });
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  InstanceOptions problem;
  std::string solver = "ga";
  std::string params;   ///< optional JSON params file
  std::string variant;  ///< PSO only; overrides the params file
  std::string preset;   ///< PSO only: example-one | example-two
  std::uint64_t seed = 1;
  std::size_t runs = 1;
  std::string out;
  std::string command_line;
};

struct SolveResult {
  std::vector<SolverReport> reports;
  std::size_t best = 0;
};

/// Runs the configured solver `runs` times with seeds derive_seed(seed, k).
inline SolveResult solve_runs(const LoadedProblem& lp, const SolveOptions& o) {
  if (o.runs < 1) throw Error(ErrorCode::InvalidConfig, "--runs must be >= 1");
  const nlohmann::json pj =
      o.params.empty() ? nlohmann::json::object() : parse_json(read_text(o.params), o.params);
  SolveResult res;
  for (std::size_t k = 0; k < o.runs; ++k) {
    const std::uint64_t seed = derive_seed(o.seed, k);
    if (o.solver == "ga") {
      GaParams gp = ga_params_from_json(pj);
      gp.seed = seed;
      res.reports.push_back(run_ga(lp.inst, lp.r, gp));
    } else if (o.solver == "pso") {
      PsoParams base;
      if (o.preset == "example-two") base = PsoParams::example_two();
      else if (!o.preset.empty() && o.preset != "example-one") {
        throw Error(ErrorCode::InvalidConfig, "preset must be example-one or example-two");
      }
      PsoParams pp = pso_params_from_json(pj, base);
      if (!o.variant.empty()) pp.variant = parse_variant(o.variant);
      pp.seed = seed;
      res.reports.push_back(run_pso(lp.inst, lp.r, pp));
    } else {
      throw Error(ErrorCode::InvalidConfig, "solver must be ga or pso");
    }
    if (k > 0 && better(res.reports[k].best_fitness.value,
                        res.reports[res.best].best_fitness.value, ComparePolicy::Combined)) {
      res.best = k;
    }
  }
  return res;
}

inline int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    const LoadedProblem lp = load_problem(o.problem);
    const SolveResult res = solve_runs(lp, o);

    bool monotone = true;
    fixed6(out);
    out << "r " << lp.r << "  solver " << res.reports.front().solver << '\n';
    for (std::size_t k = 0; k < res.reports.size(); ++k) {
      const auto& rep = res.reports[k];
      const bool mono = trace_non_decreasing(rep.trace, ComparePolicy::Combined);
      monotone = monotone && mono;
      out << "run " << k + 1 << "  seed " << rep.seed << "  best " << rep.best_fitness.value.lo()
          << " / " << rep.best_fitness.value.hi() << "  cost " << std::setprecision(0)
          << rep.best_fitness.cost << std::setprecision(6) << (mono ? "" : "  NON-MONOTONE TRACE")
          << '\n';
    }
    const auto& best = res.reports[res.best];
    out << "best-of-" << res.reports.size() << "  " << best.best_fitness.value.lo() << " / "
        << best.best_fitness.value.hi() << "  cost " << std::setprecision(0)
        << best.best_fitness.cost << "  " << format_allocation(best.best) << '\n';

    if (!o.out.empty()) {
      const std::filesystem::path dir(o.out);
      RunManifest man;
      nlohmann::json runs = nlohmann::json::array();
      for (std::size_t k = 0; k < res.reports.size(); ++k) {
        const std::string trace = "run_" + std::to_string(k + 1) + "_trace.csv";
        std::ostringstream csv;
        write_trace_csv(csv, res.reports[k].trace,
                        o.solver == "ga" ? "generation" : "iteration");
        write_atomic(dir / trace, csv.str());
        man.outputs.push_back(trace);
        runs.push_back(to_json(res.reports[k]));
      }
      write_atomic(dir / "best_allocation.txt", format_allocation(best.best) + "\n");
      write_atomic(dir / "report.json", nlohmann::json{{"runs", runs}, {"best_run", res.best + 1}}
                                            .dump(2) + "\n");
      man.outputs.push_back("best_allocation.txt");
      man.outputs.push_back("report.json");
      man.outputs.push_back("manifest.json");
      man.command_line = o.command_line;
      man.command = "solve";
      man.options = instance_options_json(o.problem, lp.r);
      man.options["solver"] = o.solver;
      man.options["runs"] = o.runs;
      man.options["params_file"] = o.params;
      man.options["variant"] = o.variant;
      man.options["preset"] = o.preset;
      man.params = res.reports.front().params;
      man.seed = o.seed;
      man.results = {{"best_run", res.best + 1},
                     {"best_value", interval_json(best.best_fitness.value)},
                     {"best_cost", best.best_fitness.cost},
                     {"best_allocation", format_allocation(best.best)},
                     {"traces_monotone", monotone}};
      man.wall_seconds = seconds_since(start);
      man.write(dir);
    }
    return monotone ? int(kExitOk) : int(kExitInvariant);
  });
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  InstanceOptions problem;
  std::string parameter;  ///< m_gen | p_size | p_cross | p_mutat
  std::vector<double> values;
  std::size_t repetitions = 1;
  std::string params;
  std::uint64_t seed = 1;
  std::string out;
  std::string command_line;
};

inline GaParams with_parameter(GaParams p, const std::string& name, double v) {
  auto count = [&](double x) {
    if (!(x >= 1.0) || x != std::floor(x)) {
      throw Error(ErrorCode::InvalidConfig, name + " values must be positive integers");
    }
    return static_cast<std::size_t>(x);
  };
  if (name == "m_gen") p.m_gen = count(v);
  else if (name == "p_size") p.p_size = count(v);
  else if (name == "p_cross") p.p_cross = v;
  else if (name == "p_mutat") p.p_mutat = v;
  else throw Error(ErrorCode::InvalidConfig, "sweep parameter must be m_gen, p_size, p_cross or p_mutat");
  p.validate();
  return p;
}

inline int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    if (o.values.empty()) throw Error(ErrorCode::InvalidConfig, "empty value list");
    if (o.repetitions < 1) throw Error(ErrorCode::InvalidConfig, "repetitions must be >= 1");
    const LoadedProblem lp = load_problem(o.problem);
    const GaParams base = ga_params_from_json(
        o.params.empty() ? nlohmann::json::object() : parse_json(read_text(o.params), o.params));
    for (double v : o.values) (void)with_parameter(base, o.parameter, v);

    std::ostringstream csv;
    csv.precision(17);
    csv << o.parameter << ",repetition,seed,best_lo,best_hi,cost,trace_monotone\n";
    SvgSeries lower{"best lower", {}, {}};
    SvgSeries upper{"best upper", {}, {}};
    bool monotone = true;
    std::uint64_t index = 0;
    fixed6(out);
    for (double v : o.values) {
      std::optional<Interval> best;
      for (std::size_t rep = 0; rep < o.repetitions; ++rep) {
        GaParams gp = with_parameter(base, o.parameter, v);
        gp.seed = derive_seed(o.seed, index++);
        const SolverReport r = run_ga(lp.inst, lp.r, gp);
        const bool mono = trace_non_decreasing(r.trace, ComparePolicy::Combined);
        monotone = monotone && mono;
        const Interval b = r.best_fitness.value;
        csv << v << ',' << rep + 1 << ',' << gp.seed << ',' << b.lo() << ',' << b.hi() << ','
            << r.best_fitness.cost << ',' << (mono ? 1 : 0) << '\n';
        if (!best || better(b, *best, ComparePolicy::Combined)) best = b;
      }
      out << o.parameter << " = " << std::defaultfloat << v << std::fixed << "  best "
          << best->lo() << " / " << best->hi() << '\n';
      lower.xs.push_back(v);
      lower.ys.push_back(best->lo());
      upper.xs.push_back(v);
      upper.ys.push_back(best->hi());
    }
    if (!o.out.empty()) {
      const std::filesystem::path dir(o.out);
      const std::string stem = "sweep_" + o.parameter;
      write_atomic(dir / (stem + ".csv"), csv.str());
      write_atomic(dir / (stem + ".svg"),
                   svg_line_chart("Best system reliability vs " + o.parameter, o.parameter,
                                  "system reliability", {lower, upper}));
      RunManifest man;
      man.command_line = o.command_line;
      man.command = "sweep";
      man.options = instance_options_json(o.problem, lp.r);
      man.options["parameter"] = o.parameter;
      man.options["values"] = o.values;
      man.options["repetitions"] = o.repetitions;
      man.options["params_file"] = o.params;
      man.params = to_json(base);
      man.seed = o.seed;
      man.outputs = {stem + ".csv", stem + ".svg", "manifest.json"};
      man.results = {{"traces_monotone", monotone}};
      man.wall_seconds = seconds_since(start);
      man.write(dir);
    } else {
      out << csv.str();
    }
    return monotone ? int(kExitOk) : int(kExitInvariant);
  });
}

// ---------------------------------------------------------------------------
// curve

struct CurveOptions {
  std::string instance;
  std::size_t cores = 2;  ///< L, active conventional cores
  std::vector<std::size_t> oics{2, 3, 4};
  double element_scale = 1e-6;  ///< failure rate per logical element (1/hour)
  std::optional<unsigned> beta;
  double t_begin = 0.0;
  double t_end = 1000.0;
  std::size_t steps = 50;
  bool startup = false;  ///< pre-activate every available function
  std::string out;
  std::string command_line;
};

/// M-OIC configuration: OIC i takes readiness and wakeup row (i mod m) of the
/// instance, every supported function is available.
inline OssConfig curve_config(const RapInstance& inst, std::size_t oics, bool startup) {
  OssConfig cfg;
  cfg.p = RealMatrix(oics, inst.n());
  cfg.a = BitMatrix(oics, inst.n());
  cfg.x = BitMatrix(oics, inst.n());
  for (std::size_t i = 0; i < oics; ++i) {
    const std::size_t src = i % inst.m();
    cfg.rd.push_back(inst.rd[src]);
    for (std::size_t j = 0; j < inst.n(); ++j) {
      cfg.p(i, j) = inst.p(src, j);
      cfg.a(i, j) = inst.supported(src, j);
      cfg.x(i, j) = startup && cfg.a(i, j);
    }
  }
  return cfg;
}

inline int cmd_curve(const CurveOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = std::chrono::steady_clock::now();
    if (o.t_begin < 0.0 || o.t_end < 0.0) throw Error(ErrorCode::NegativeTime, "t range must be >= 0");
    if (!(o.t_end > o.t_begin) || o.steps < 1) {
      throw Error(ErrorCode::InvalidConfig, "need t_end > t_begin and steps >= 1");
    }
    if (o.oics.empty() || o.cores < 1) throw Error(ErrorCode::InvalidConfig, "need OIC counts and L >= 1");
    const RapInstance inst = load_instance(o.instance);
    const ErlangParams params = ErlangParams::from_element_counts(
        o.element_scale, std::vector<double>(o.cores, kMipsCoreLogicalElements), o.beta);

    std::vector<OssConfig> configs;
    for (std::size_t m : o.oics) {
      if (m < 1) throw Error(ErrorCode::InvalidConfig, "OIC count must be >= 1");
      configs.push_back(curve_config(inst, m, o.startup));
      configs.back().active_cores = o.cores;
    }
    std::vector<SvgSeries> series;
    for (std::size_t m : o.oics) series.push_back({std::to_string(m) + " OICs", {}, {}});

    std::ostringstream csv;
    csv.precision(17);
    csv << "t";
    for (std::size_t m : o.oics) csv << ",oics_" << m;
    csv << '\n';
    bool dominance = true;
    for (std::size_t k = 0; k <= o.steps; ++k) {
      const double t = o.t_begin + (o.t_end - o.t_begin) * double(k) / double(o.steps);
      csv << t;
      for (std::size_t s = 0; s < configs.size(); ++s) {
        const double v = time_dependent_system_reliability(configs[s], params, t);
        csv << ',' << v;
        series[s].xs.push_back(t);
        series[s].ys.push_back(v);
      }
      csv << '\n';
      // More OICs never lose reliability at the same t.
      for (std::size_t s = 0; s < configs.size(); ++s) {
        for (std::size_t q = 0; q < configs.size(); ++q) {
          if (o.oics[q] > o.oics[s] && series[q].ys.back() < series[s].ys.back() - 1e-12) {
            dominance = false;
          }
        }
      }
    }
    fixed6(out);
    for (std::size_t s = 0; s < configs.size(); ++s) {
      out << series[s].name << ": S(" << o.t_begin << ") = " << series[s].ys.front() << "  S("
          << o.t_end << ") = " << series[s].ys.back() << '\n';
    }
    if (!dominance) out << "pointwise dominance in OIC count VIOLATED\n";

    if (!o.out.empty()) {
      const std::filesystem::path dir(o.out);
      write_atomic(dir / "curve.csv", csv.str());
      write_atomic(dir / "curve.svg",
                   svg_line_chart("System reliability vs time, L = " + std::to_string(o.cores),
                                  "time (hours)", "system reliability", series));
      RunManifest man;
      man.command_line = o.command_line;
      man.command = "curve";
      man.options = {{"instance", o.instance},  {"L", o.cores},
                     {"oics", o.oics},          {"element_scale", o.element_scale},
                     {"t_begin", o.t_begin},    {"t_end", o.t_end},
                     {"steps", o.steps},        {"startup", o.startup}};
      if (o.beta) man.options["beta"] = *o.beta;
      man.outputs = {"curve.csv", "curve.svg", "manifest.json"};
      man.results = {{"dominance", dominance}, {"rates", params.rates}};
      man.wall_seconds = seconds_since(start);
      man.write(dir);
    } else {
      out << csv.str();
    }
    return dominance ? int(kExitOk) : int(kExitInvariant);
  });
}

}  // namespace oicrel
