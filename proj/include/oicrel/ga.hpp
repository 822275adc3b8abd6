#pragma once

// Two-phase genetic algorithm for the interval RAP.
//
// Primary phase: short independent hill-climbing runs seed the population
// (plus one greedy construction on large instances). Secondary phase:
// threshold-filtered fitness-proportional selection, two-point crossover on
// the concatenated (X|A) genome, bit-flip mutation, repair and elitism.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "oicrel/interval.hpp"
#include "oicrel/oss.hpp"
#include "oicrel/rap.hpp"
#include "oicrel/random.hpp"
#include "oicrel/report.hpp"

namespace oicrel {

struct GaParams {
  std::size_t p_size = 100;
  double p_cross = 0.8;
  double p_mutat = 0.06;
  std::size_t m_gen = 200;
  std::size_t d_runs = 10;
  /// Hill-climbing steps per primary-phase run.
  std::size_t primary_steps = 50;
  double threshold_quantile = 0.5;
  ComparePolicy policy = ComparePolicy::Combined;
  std::uint64_t seed = 1;
  /// false gives the "regular GA" baseline: random initial population only.
  bool primary_phase = true;
  /// Instances with at least this many cells also get the greedy seed.
  std::size_t greedy_min_cells = 60;
  std::optional<EarlyStop> early_stop;

  void validate() const {
    if (p_size < 2) throw Error(ErrorCode::InvalidConfig, "p_size must be >= 2");
    if (!(p_cross >= 0.0 && p_cross <= 1.0) || !(p_mutat >= 0.0 && p_mutat <= 1.0)) {
      throw Error(ErrorCode::InvalidConfig, "p_cross and p_mutat must lie in [0,1]");
    }
    if (!(threshold_quantile >= 0.0 && threshold_quantile < 1.0)) {
      throw Error(ErrorCode::InvalidConfig, "threshold_quantile must lie in [0,1)");
    }
  }
};

inline nlohmann::json to_json(const GaParams& p) {
  nlohmann::json j{{"p_size", p.p_size},
                   {"p_cross", p.p_cross},
                   {"p_mutat", p.p_mutat},
                   {"m_gen", p.m_gen},
                   {"d_runs", p.d_runs},
                   {"primary_steps", p.primary_steps},
                   {"threshold_quantile", p.threshold_quantile},
                   {"policy", to_string(p.policy)},
                   {"seed", p.seed},
                   {"primary_phase", p.primary_phase},
                   {"greedy_min_cells", p.greedy_min_cells}};
  if (p.early_stop) {
    j["early_stop"] = {{"window", p.early_stop->window}, {"delta", p.early_stop->delta}};
  }
  return j;
}

struct GaState {
  std::vector<Allocation> population;
  std::vector<IntervalFitness> fitness;
  Allocation elite;
  IntervalFitness elite_fitness;
  std::size_t generation = 0;
  Rng rng{0};
};

namespace ga_detail {

inline std::size_t best_index(const std::vector<IntervalFitness>& fit,
                              ComparePolicy policy) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < fit.size(); ++k) {
    if (better(fit[k].value, fit[best].value, policy)) best = k;
  }
  return best;
}

// Wakeup-only reliability of function j under the availability in `alloc`.
inline double wakeup_function_reliability(const RapInstance& inst,
                                          const BitMatrix& a, std::size_t j,
                                          double r) {
  double all_fail = 1.0;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    if (a(i, j)) all_fail *= 1.0 - inst.rd[i] * r * inst.p(i, j);
  }
  return 1.0 - all_fail;
}

}  // namespace ga_detail

/// Greedy construction: add copies by best wakeup-only gain, improve by
/// pairwise host swaps, then pre-activate per function at the host that
/// maximizes its reliability while the budget allows.
inline Allocation greedy_seed(const BoundProblem& problem) {
  const RapInstance& inst = problem.inst;
  const double r = problem.repair_point();
  const std::size_t m = inst.m();
  const std::size_t n = inst.n();
  constexpr double kEps = 1e-15;
  Allocation alloc = empty_allocation(inst);

  for (std::size_t j = 0; j < n; ++j) {
    for (;;) {
      const double base = ga_detail::wakeup_function_reliability(inst, alloc.a, j, r);
      std::optional<std::size_t> pick;
      double pick_gain = kEps;
      for (std::size_t i = 0; i < m; ++i) {
        if (alloc.a(i, j) || !inst.supported(i, j)) continue;
        alloc.a(i, j) = 1;
        const double gain =
            ga_detail::wakeup_function_reliability(inst, alloc.a, j, r) - base;
        alloc.a(i, j) = 0;
        if (gain > pick_gain) {
          pick_gain = gain;
          pick = i;
        }
      }
      if (!pick) break;
      alloc.a(*pick, j) = 1;
    }
  }

  // Move one copy of j from b to a when that helps most.
  for (std::size_t j = 0; j < n; ++j) {
    for (;;) {
      const double base = ga_detail::wakeup_function_reliability(inst, alloc.a, j, r);
      std::optional<std::pair<std::size_t, std::size_t>> move;
      double move_gain = kEps;
      for (std::size_t to = 0; to < m; ++to) {
        if (alloc.a(to, j) || !inst.supported(to, j)) continue;
        for (std::size_t from = 0; from < m; ++from) {
          if (!alloc.a(from, j)) continue;
          alloc.a(to, j) = 1;
          alloc.a(from, j) = 0;
          const double gain =
              ga_detail::wakeup_function_reliability(inst, alloc.a, j, r) - base;
          alloc.a(to, j) = 0;
          alloc.a(from, j) = 1;
          if (gain > move_gain) {
            move_gain = gain;
            move = {to, from};
          }
        }
      }
      if (!move) break;
      alloc.a(move->first, j) = 1;
      alloc.a(move->second, j) = 0;
    }
  }
  alloc = problem.repair(std::move(alloc));

  OssConfig cfg = make_config(inst, alloc, problem.r);
  for (bool added = true; added;) {
    added = false;
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    std::vector<double> rel(n);
    for (std::size_t j = 0; j < n; ++j) rel[j] = function_reliability(cfg, j, true, r);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t k) { return rel[l] < rel[k]; });
    for (std::size_t j : order) {
      auto allowed = [&](std::size_t i) {
        if (cfg.x(i, j)) return false;
        cfg.x(i, j) = 1;
        const bool fits = startup_cost(inst, cfg.x) <= inst.budget;
        cfg.x(i, j) = 0;
        return fits;
      };
      try {
        const std::size_t host = best_startup_for_function(cfg, j, r, allowed);
        cfg.x(host, j) = 1;
        added = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoCandidate) throw;
      }
    }
  }
  alloc.x = cfg.x;
  return problem.repair(std::move(alloc));
}

/// Initial population. Hill-climbing runs whose best improved at least twice
/// in a row are admitted; the greedy seed joins on large instances; random
/// repaired allocations fill the rest.
inline std::vector<Allocation> primary_phase(const BoundProblem& problem,
                                             const GaParams& params, Rng& rng) {
  params.validate();
  validate(problem.inst);
  std::vector<Allocation> pop;
  pop.reserve(params.p_size);
  if (params.primary_phase) {
    const std::size_t genes = 2 * problem.inst.m() * problem.inst.n();
    for (std::size_t run = 0; run < params.d_runs && pop.size() < params.p_size; ++run) {
      Allocation cur = problem.random(rng);
      IntervalFitness cur_fit = problem.evaluate(cur);
      std::size_t streak = 0;
      std::size_t best_streak = 0;
      for (std::size_t s = 0; s < params.primary_steps; ++s) {
        Genome g = encode(cur);
        g[rng.below(genes)] ^= 1;
        Allocation cand = problem.repair(
            decode_genome(g, problem.inst.m(), problem.inst.n()));
        IntervalFitness cand_fit = problem.evaluate(cand);
        if (better(cand_fit.value, cur_fit.value, params.policy)) {
          cur = std::move(cand);
          cur_fit = cand_fit;
          best_streak = std::max(best_streak, ++streak);
        } else {
          streak = 0;
        }
      }
      if (best_streak >= 2) pop.push_back(std::move(cur));
    }
    if (problem.inst.m() * problem.inst.n() >= params.greedy_min_cells &&
        pop.size() < params.p_size) {
      pop.push_back(greedy_seed(problem));
    }
  }
  while (pop.size() < params.p_size) pop.push_back(problem.random(rng));
  return pop;
}

/// Children of a two-point crossover that swaps genes in [c1, c2).
inline std::pair<Genome, Genome> two_point_crossover(const Genome& a, const Genome& b,
                                                     std::size_t c1, std::size_t c2) {
  if (c1 > c2) std::swap(c1, c2);
  Genome x = a;
  Genome y = b;
  for (std::size_t k = c1; k < c2 && k < x.size(); ++k) std::swap(x[k], y[k]);
  return {std::move(x), std::move(y)};
}

inline GaState init_state(const BoundProblem& problem, const GaParams& params) {
  GaState state;
  state.rng = Rng(params.seed);
  state.population = primary_phase(problem, params, state.rng);
  state.fitness.reserve(state.population.size());
  for (const auto& a : state.population) state.fitness.push_back(problem.evaluate(a));
  const std::size_t b = ga_detail::best_index(state.fitness, params.policy);
  state.elite = state.population[b];
  state.elite_fitness = state.fitness[b];
  return state;
}

/// One generation.
inline void step(GaState& state, const BoundProblem& problem, const GaParams& params) {
  Rng& rng = state.rng;
  const std::size_t size = state.population.size();
  const std::size_t m = problem.inst.m();
  const std::size_t n = problem.inst.n();

  // Mating pool: centers at or above the threshold quantile.
  std::vector<double> centers(size);
  for (std::size_t k = 0; k < size; ++k) centers[k] = state.fitness[k].value.center();
  std::vector<double> sorted = centers;
  std::sort(sorted.begin(), sorted.end());
  const double threshold =
      sorted[static_cast<std::size_t>(params.threshold_quantile * double(size - 1))];
  std::vector<std::size_t> pool;
  for (std::size_t k = 0; k < size; ++k) {
    if (centers[k] >= threshold) pool.push_back(k);
  }
  if (pool.size() < 2) {
    pool.resize(size);
    for (std::size_t k = 0; k < size; ++k) pool[k] = k;
  }

  double total = 0.0;
  for (std::size_t k : pool) total += centers[k];
  auto select = [&]() -> const Allocation& {
    if (!(total > 0.0)) return state.population[pool[rng.below(pool.size())]];
    double target = rng.uniform() * total;
    for (std::size_t k : pool) {
      target -= centers[k];
      if (target < 0.0) return state.population[k];
    }
    return state.population[pool.back()];
  };

  std::vector<Allocation> next;
  next.reserve(size);
  next.push_back(state.elite);
  while (next.size() < size) {
    Genome g1 = encode(select());
    Genome g2 = encode(select());
    if (rng.uniform() < params.p_cross) {
      const std::size_t len = g1.size();
      const std::size_t c1 = rng.below(len + 1);
      std::size_t c2 = rng.below(len);
      if (c2 >= c1) ++c2;
      std::tie(g1, g2) = two_point_crossover(g1, g2, c1, c2);
    }
    for (Genome* g : {&g1, &g2}) {
      for (auto& bit : *g) {
        if (rng.uniform() < params.p_mutat) bit ^= 1;
      }
      if (next.size() < size) next.push_back(problem.repair(decode_genome(*g, m, n)));
    }
  }

  state.population = std::move(next);
  state.fitness.clear();
  for (const auto& a : state.population) state.fitness.push_back(problem.evaluate(a));
  const std::size_t b = ga_detail::best_index(state.fitness, params.policy);
  if (better(state.fitness[b].value, state.elite_fitness.value, params.policy)) {
    state.elite = state.population[b];
    state.elite_fitness = state.fitness[b];
  }
  ++state.generation;
}

inline SolverReport run_ga(const RapInstance& inst, const Interval& r,
                           const GaParams& params) {
  const auto start = std::chrono::steady_clock::now();
  const BoundProblem problem{inst, r};
  GaState state = init_state(problem, params);

  SolverReport rep;
  rep.solver = params.primary_phase ? "ga" : "ga-regular";
  rep.seed = params.seed;
  rep.params = to_json(params);
  rep.r_used = r;
  rep.trace.push_back({0, state.elite_fitness.value, state.elite_fitness.cost});
  for (std::size_t g = 0; g < params.m_gen; ++g) {
    step(state, problem, params);
    rep.trace.push_back({state.generation, state.elite_fitness.value,
                         state.elite_fitness.cost});
    if (params.early_stop && params.early_stop->should_stop(rep.trace)) break;
  }
  rep.best = state.elite;
  rep.best_fitness = state.elite_fitness;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace oicrel
