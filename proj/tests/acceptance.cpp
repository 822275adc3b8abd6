// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oicrel/commands.hpp"
#include "oicrel/ga.hpp"
#include "oicrel/mc_oracle.hpp"
#include "oicrel/pso.hpp"
#include "support.hpp"

using namespace oicrel;
namespace fs = std::filesystem;
namespace t = oicrel::testing;

namespace {

constexpr double kCeiling = 0.970299;  // 0.99^3 rounded to six places

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << "FAILED " << what;
    }
  }
  void note(const std::string& what) { detail << (detail.tellp() > 0 ? "; " : "") << what; }
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

std::string fmt(const Interval& x) { return "[" + fmt(x.lo()) + ", " + fmt(x.hi()) + "]"; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Traces of every solver run, for criterion 10.
std::vector<std::pair<std::string, std::vector<TracePoint>>> g_traces;

// --- 1 ----------------------------------------------------------------------

void criterion_1(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  auto same = [](const Interval& x, double lo, double hi) { return x.lo() == lo && x.hi() == hi; };
  auto near = [](const Interval& x, double lo, double hi) {
    return std::abs(x.lo() - lo) <= 1e-15 && std::abs(x.hi() - hi) <= 1e-15;
  };
  int bad = 0;
  bad += !same(add(Interval(1, 2), Interval(3, 4)), 4, 6);
  bad += !same(add(Interval(0.0), Interval(-2, 7)), -2, 7);
  bad += !near(add(Interval(0.68, 0.72), Interval(0.73, 0.75)), 1.41, 1.47);
  bad += !same(sub(Interval(3, 5), Interval(1, 2)), 1, 4);
  bad += !same(sub(Interval(3, 5), Interval(1, 2), SubtractionMode::AsPrinted), 2, 3);
  bad += !same(sub(Interval(-1, 6), Interval(0.0)), -1, 6);
  bad += !same(scale(2, Interval(1, 3)), 2, 6);
  bad += !same(scale(-1, Interval(1, 3)), -3, -1);
  bad += !same(scale(0, Interval(-4, 9)), 0, 0);
  bad += !same(mul(Interval(1, 2), Interval(3, 4)), 3, 8);
  bad += !same(mul(Interval(-1, 2), Interval(3, 4)), -4, 8);
  bad += !near(mul(Interval(0.9, 0.95), Interval(0.9, 0.95)), 0.81, 0.9025);
  bad += !same(div(Interval(2, 4), Interval(1, 2)), 1, 4);
  bad += !same(div(Interval(-3, 7), Interval(1.0)), -3, 7);
  try {
    (void)div(Interval(1.0), Interval(0, 1));
    ++bad;
  } catch (const Error& e) {
    bad += e.code() != ErrorCode::ZeroInDivisor;
  }
  bad += !near(pow(Interval(0.9, 0.95), 3), 0.729, 0.857375);
  bad += !same(pow(Interval(-2, 1), 2), 0, 4);
  bad += !same(pow(Interval(-3, -2), 3), -27, -8);
  bad += !same(pow(Interval(0.3, 0.7), 0), 1, 1);
  bad += !compare_max(Interval(0.73, 0.75), Interval(0.68, 0.72), ComparePolicy::Optimistic).greater();
  bad += compare_max(Interval(0.76, 0.86), Interval(0.77, 0.80), ComparePolicy::Pessimistic).verdict !=
         Verdict::EqualOrIncomparable;
  bad += !compare_max(Interval(0.76, 0.86), Interval(0.77, 0.80), ComparePolicy::Combined).greater();
  o.require(bad == 0, std::to_string(bad) + " unit cases");

  Rng rng(1001);
  auto pick = [&](const Interval& x) { return x.lo() + x.width() * rng.uniform(); };
  auto random_interval = [&](double lo, double hi) {
    return Interval(lo + (hi - lo) * rng.uniform(), lo + (hi - lo) * rng.uniform());
  };
  auto inside = [](const Interval& z, double v) {
    const double slack = 1e-12 * (1 + std::abs(v));
    return z.lo() - slack <= v && v <= z.hi() + slack;
  };
  std::size_t incl_fail = 0, degen_fail = 0;
  for (int k = 0; k < 100000; ++k) {
    const Interval x = random_interval(-5, 5), y = random_interval(-5, 5), d = random_interval(0.5, 4);
    const double a = pick(x), b = pick(y), c = pick(d);
    const double lambda = -3 + 6 * rng.uniform();
    const unsigned n = unsigned(rng.below(5));
    incl_fail += !(inside(add(x, y), a + b) && inside(sub(x, y), a - b) &&
                   inside(scale(lambda, x), lambda * a) && inside(mul(x, y), a * b) &&
                   inside(pow(x, n), std::pow(a, n)) && inside(div(x, d), a / c));
    const Interval pa(a), pb(b), pc(c);
    degen_fail += !(add(pa, pb) == Interval(a + b) && sub(pa, pb) == Interval(a - b) &&
                    sub(pa, pb, SubtractionMode::AsPrinted) == Interval(a - b) &&
                    scale(lambda, pa) == Interval(lambda * a) && mul(pa, pb) == Interval(a * b) &&
                    div(pa, pc) == Interval(a / c));
  }
  o.require(incl_fail == 0, std::to_string(incl_fail) + " inclusion failures");
  o.require(degen_fail == 0, std::to_string(degen_fail) + " degenerate failures");
  const double secs = seconds_since(start);
  o.require(secs < 5.0, "runtime");
  o.note("1e5 samples, " + fmt(secs, 2) + " s");
}

// --- 2 ----------------------------------------------------------------------

void criterion_2(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1002);
  int agree = 0;
  double worst = 0.0;
  constexpr int kConfigs = 20;
  for (int k = 0; k < kConfigs; ++k) {
    const OssConfig cfg = t::random_config(rng, 1 + rng.below(4), 1 + rng.below(4));
    const double r = k % 2 ? 0.9 : 0.5;
    const double closed = system_reliability(cfg, r);
    const McEstimate est = simulate(cfg, r, 1000000, derive_seed(1002, k));
    const bool ok = agrees(est, closed);
    agree += ok;
    worst = std::max(worst, std::abs(closed - est.mean) / std::max(4 * est.std_error, 1e-3));
  }
  const double secs = seconds_since(start);
  o.require(agree == kConfigs, std::to_string(kConfigs - agree) + " disagreements");
  o.require(secs < 60.0, "runtime");
  o.note(std::to_string(agree) + "/" + std::to_string(kConfigs) +
         " agree, worst |diff|/bound " + fmt(worst, 3) + ", " + fmt(secs, 1) + " s");
}

// --- 3 ----------------------------------------------------------------------

void criterion_3(Outcome& o) {
  Rng rng(1003);
  int fail_ir = 0, fail_series = 0, fail_parallel = 0, fail_ic = 0;
  double worst = 0.0;
  auto check = [&](double a, double b, int& counter) {
    worst = std::max(worst, std::abs(a - b));
    counter += std::abs(a - b) > 1e-12;
  };
  for (int k = 0; k < 1000; ++k) {
    OssConfig cfg = t::random_config(rng, 1 + rng.below(4), 1 + rng.below(4));
    const double rd = rng.uniform();
    cfg.rd.assign(cfg.m(), rd);
    const double r = rng.uniform();
    check(special_case_identical_readiness(cfg, rd, r), system_reliability(cfg, r), fail_ir);
  }
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + rng.below(5);
    OssConfig id;
    id.p = RealMatrix(n, n, 0.4);
    id.a = BitMatrix(n, n);
    id.x = BitMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      id.a(i, i) = id.x(i, i) = 1;
      id.rd.push_back(rng.uniform());
    }
    const double r = rng.uniform();
    check(special_case_series(id.rd, r), system_reliability(id, r), fail_series);
  }
  for (int k = 0; k < 1000; ++k) {
    OssConfig par = t::random_config(rng, 1 + rng.below(4), 1 + rng.below(3));
    par.a = BitMatrix(par.m(), par.n(), 1);
    for (std::size_t q = 0; q < par.p.size(); ++q) par.p.flat(q) = 1.0;
    check(special_case_parallel(par.rd), system_reliability(par, 1.0), fail_parallel);
  }
  for (int k = 0; k < 1000; ++k) {
    OssConfig ic = t::random_config(rng, 1 + rng.below(4), 1 + rng.below(4));
    std::vector<double> wake(ic.n());
    for (auto& v : wake) v = rng.uniform();
    for (std::size_t i = 0; i < ic.m(); ++i) {
      for (std::size_t j = 0; j < ic.n(); ++j) ic.p(i, j) = wake[j];
    }
    const double r = rng.uniform();
    check(special_case_identical_components(ic, wake, r), system_reliability(ic, r), fail_ic);
  }
  o.require(fail_ir == 0, "identical readiness x" + std::to_string(fail_ir));
  o.require(fail_series == 0, "series x" + std::to_string(fail_series));
  o.require(fail_parallel == 0, "parallel x" + std::to_string(fail_parallel));
  o.require(fail_ic == 0, "identical components x" + std::to_string(fail_ic));
  std::ostringstream w;
  w << "4 x 1000 configs, worst deviation " << std::scientific << std::setprecision(2) << worst;
  o.note(w.str());
}

// --- 4 ----------------------------------------------------------------------

void criterion_4(Outcome& o) {
  Rng rng(1004);
  int trials = 0, violations = 0;
  while (trials < 1000) {
    OssConfig cfg = t::random_config(rng, 1 + rng.below(4), 1 + rng.below(4));
    cfg.r = Interval(rng.uniform(), rng.uniform());
    const std::size_t i = rng.below(cfg.m());
    const std::size_t j = rng.below(cfg.n());
    OssConfig more = cfg;
    if (!cfg.a(i, j)) more.a(i, j) = 1;
    else if (!cfg.x(i, j)) more.x(i, j) = 1;
    else continue;
    ++trials;
    const Interval before = interval_system_reliability(cfg);
    const Interval after = interval_system_reliability(more);
    violations += after.lo() < before.lo() - 1e-15 || after.hi() < before.hi() - 1e-15;
  }
  o.require(violations == 0, std::to_string(violations) + " decreases");
  o.note(std::to_string(trials) + " single-bit flips");
}

// --- 5 ----------------------------------------------------------------------

void criterion_5(Outcome& o) {
  Rng rng(1005);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::vector<double> rd(1 + rng.below(10));
    for (auto& v : rd) v = rng.uniform();
    worst = std::max(worst, std::abs(readiness_partition_sum(rd) - 1.0));
  }
  o.require(worst <= 1e-12, "partition sum");
  std::ostringstream w;
  w << "100 vectors, worst |sum - 1| " << std::scientific << std::setprecision(2) << worst;
  o.note(w.str());
}

// --- 6 ----------------------------------------------------------------------

void criterion_6(Outcome& o) {
  double worst = 0.0;
  for (double lambda : {1e-4, 0.01, 0.5, 2.0}) {
    for (int k = 0; k <= 50; ++k) {
      const double tt = 20.0 * k / lambda / 50.0;
      worst = std::max(worst, std::abs(erlang_reliability(tt, {lambda}, 1) - std::exp(-lambda * tt)));
    }
  }
  o.require(worst <= 1e-12, "beta = 1 exponential");

  OssConfig single;
  single.rd = {1.0};
  single.p = RealMatrix{{0.5}};
  single.a = BitMatrix{{1}};
  single.x = BitMatrix{{1}};
  double worst_rel = 0.0;
  for (double lambda : {0.01, 0.5, 3.0}) {
    const double m = mttf(single, ErlangParams{{lambda}, 1u});
    worst_rel = std::max(worst_rel, std::abs(m - 1.0 / lambda) * lambda);
  }
  o.require(worst_rel <= 1e-4, "exponential MTTF");
  const double m2 = mttf(single, ErlangParams{{1.0}, 2u});
  o.require(std::abs(m2 - 2.0) <= 1e-6, "beta = 2 MTTF");
  std::ostringstream w;
  w << "exp dev " << std::scientific << std::setprecision(1) << worst << ", MTTF rel dev " << worst_rel
    << ", beta=2 MTTF " << std::fixed << std::setprecision(9) << m2;
  o.note(w.str());
}

// --- 7 ----------------------------------------------------------------------

void criterion_7(Outcome& o) {
  Rng rng(1007);
  int mismatches = 0;
  for (int k = 0; k < 500; ++k) {
    OssConfig cfg = t::random_config(rng, 1 + rng.below(5), 1 + rng.below(3));
    const std::size_t j = rng.below(cfg.n());
    cfg.a(rng.below(cfg.m()), j) = 1;
    const double r = rng.uniform();
    mismatches += best_startup_for_function(cfg, j, r) != t::brute_force_best_startup(cfg, j, r);
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  o.note("500 instances");
}

// --- 8 ----------------------------------------------------------------------

void criterion_8(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  const RapInstance inst = load_instance(t::data_path("example_one.json"));
  bool ceiling_ok = true;
  for (std::size_t s = 0; s < inst.r_sets.size(); ++s) {
    const Interval r = max_interval_in_set(inst.r_sets[s], ComparePolicy::Combined);
    std::optional<SolverReport> best;
    for (std::uint64_t k = 0; k < 20; ++k) {
      GaParams params;
      params.seed = derive_seed(8000 + s, k);
      SolverReport rep = run_ga(inst, r, params);
      ceiling_ok = ceiling_ok && rep.best_fitness.value.hi() <= kCeiling;
      g_traces.emplace_back("ga set " + std::to_string(s + 1) + " run " + std::to_string(k + 1),
                            rep.trace);
      if (!best || better(rep.best_fitness.value, best->best_fitness.value, ComparePolicy::Combined)) {
        best = std::move(rep);
      }
    }
    const Interval v = best->best_fitness.value;
    const std::string set = "set " + std::to_string(s + 1);
    o.require(v.hi() >= 0.9690 && v.hi() <= kCeiling, set + " upper " + fmt(v.hi()));
    o.require(v.lo() >= 0.960 && v.lo() <= v.hi(), set + " lower " + fmt(v.lo()));
    o.require(best->best_fitness.cost <= 50.0, set + " cost " + fmt(best->best_fitness.cost, 0));
    o.note(set + " r=" + fmt(r) + " best " + fmt(v) + " cost " + fmt(best->best_fitness.cost, 0));
  }
  o.require(ceiling_ok, "ceiling exceeded");
  const double secs = seconds_since(start);
  o.require(secs < 300.0, "runtime");
  o.note(fmt(secs, 1) + " s");
}

// --- 9 ----------------------------------------------------------------------

void criterion_9(Outcome& o) {
  const RapInstance inst = load_instance(t::data_path("example_one.json"));
  const Interval r = max_interval_in_set(inst.r_sets[0], ComparePolicy::Combined);
  int hits = 0;
  double top = 0.0;
  bool ceiling_ok = true;
  for (std::uint64_t k = 0; k < 20; ++k) {
    PsoParams params = PsoParams::example_one();
    params.seed = derive_seed(9000, k);
    const SolverReport rep = run_pso(inst, r, params);
    const double hi = rep.best_fitness.value.hi();
    hits += hi >= 0.9695;
    top = std::max(top, hi);
    ceiling_ok = ceiling_ok && hi <= kCeiling;
    g_traces.emplace_back("pso run " + std::to_string(k + 1), rep.trace);
  }
  o.require(hits >= 15, "hit rate " + std::to_string(hits) + "/20");
  o.require(ceiling_ok, "ceiling exceeded");

  const BoundProblem problem{inst, Interval(r.center())};
  PsoParams params = PsoParams::example_one();
  params.seed = 9999;
  PsoState state = init_swarm(problem, params);
  t::collapse_to_points(state);
  const auto expected = t::classical_gbest_step(state, params);
  step(state, problem, params);
  const double err = t::max_position_error(state, expected);
  o.require(err <= 1e-12, "degenerate step deviation");
  std::ostringstream w;
  w << "upper >= 0.9695 in " << hits << "/20, max upper " << fmt(top) << ", degenerate step dev "
    << std::scientific << std::setprecision(1) << err;
  o.note(w.str());
}

// --- 10 ---------------------------------------------------------------------

void criterion_10(Outcome& o) {
  int bad = 0;
  for (const auto& [name, trace] : g_traces) {
    if (!trace_non_decreasing(trace, ComparePolicy::Combined)) {
      ++bad;
      o.note("non-monotone: " + name);
    }
  }
  o.require(!g_traces.empty(), "no traces collected");
  o.require(bad == 0, std::to_string(bad) + " traces");
  o.note(std::to_string(g_traces.size()) + " traces checked");
}

// --- 11 ---------------------------------------------------------------------

void criterion_11(Outcome& o) {
  struct Case {
    const char* instance;
    const char* allocation;
    double cost;
    Interval reported;
  };
  const fs::path root = fs::temp_directory_path() / "oicrel_acceptance";
  for (const Case& c : {Case{"example_one.json", "published_one_set1.txt", 44, Interval(0.969002, 0.970178)},
                        Case{"example_two.json", "published_two_set1.txt", 2500, Interval(0.989966, 0.989997)}}) {
    EvalOptions e;
    e.problem.instance = t::data_path(c.instance);
    e.allocation = t::data_path(c.allocation);
    e.expect = c.reported;
    e.out = (root / c.allocation).string();
    e.command_line = std::string("acceptance eval ") + c.allocation;
    std::ostringstream out, err;
    const int code = cmd_eval(e, out, err);
    o.require(code == kExitOk, std::string(c.allocation) + " exit " + std::to_string(code) + " " + err.str());
    if (code != kExitOk) continue;
    const auto man = nlohmann::json::parse(read_text(fs::path(e.out) / "manifest.json"));
    const auto& res = man["results"];
    const double cost = res["cost"].get<double>();
    const Interval v(res["value"][0].get<double>(), res["value"][1].get<double>());
    o.require(cost == c.cost, std::string(c.allocation) + " cost " + fmt(cost, 0));
    o.require(res.contains("deviation"), std::string(c.allocation) + " deviation not in manifest");
    o.require(res.value("within_tolerance", false),
              std::string(c.allocation) + " reliability " + fmt(v) + " vs reported " + fmt(c.reported));
    o.note(std::string(c.allocation) + " cost " + fmt(cost, 0) + " value " + fmt(v));
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"interval kernel exactness", criterion_1},
      {"closed form vs Monte Carlo", criterion_2},
      {"special-case reductions", criterion_3},
      {"monotonicity in a and x", criterion_4},
      {"readiness partition identity", criterion_5},
      {"Erlang reliability and MTTF", criterion_6},
      {"startup argmax vs brute force", criterion_7},
      {"GA on example one, every interval set", criterion_8},
      {"PSO sanity on example one", criterion_9},
      {"best-so-far traces non-decreasing", criterion_10},
      {"published solutions through eval", criterion_11},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << k + 1 << ": "
              << criteria[k].first << " (" << o.detail.str() << ")" << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
