#pragma once

// Generators and independent reference computations shared by the suites.
// Nothing here calls the library's reliability code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "oicrel/oss.hpp"
#include "oicrel/pso.hpp"
#include "oicrel/random.hpp"
#include "oicrel/rap.hpp"

namespace oicrel::testing {

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

/// Random config: m x n, random rd, p, a, and x <= a.
inline OssConfig random_config(Rng& rng, std::size_t m, std::size_t n, double a_density = 0.7,
                               double x_density = 0.4) {
  OssConfig cfg;
  cfg.p = RealMatrix(m, n);
  cfg.a = BitMatrix(m, n);
  cfg.x = BitMatrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    cfg.rd.push_back(uniform(rng, 0.5, 1.0));
    for (std::size_t j = 0; j < n; ++j) {
      cfg.p(i, j) = rng.uniform();
      cfg.a(i, j) = rng.bernoulli(a_density);
      cfg.x(i, j) = cfg.a(i, j) && rng.bernoulli(x_density);
    }
  }
  return cfg;
}

/// Joint-state enumeration: sums the probability of every combination of
/// readiness outcomes and per-host attempt outcomes in which each function
/// has at least one successful attempt. Exponential; keep m*n small.
inline double brute_force_reliability(const OssConfig& cfg, double r) {
  const std::size_t m = cfg.selected();
  const std::size_t n = cfg.n();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cfg.a(i, j)) cells.emplace_back(i, j);
    }
  }
  double total = 0.0;
  for (std::uint64_t ready = 1; ready < (std::uint64_t{1} << m); ++ready) {
    double p_ready = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      p_ready *= (ready >> i) & 1 ? cfg.rd[i] : 1.0 - cfg.rd[i];
    }
    std::vector<std::size_t> live;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if ((ready >> cells[c].first) & 1) live.push_back(c);
    }
    for (std::uint64_t ok = 0; ok < (std::uint64_t{1} << live.size()); ++ok) {
      double pr = p_ready;
      std::vector<bool> served(n, false);
      for (std::size_t k = 0; k < live.size(); ++k) {
        const auto [i, j] = cells[live[k]];
        const double e = cfg.x(i, j) ? 1.0 : cfg.p(i, j);
        const double s = r * e;
        if ((ok >> k) & 1) {
          pr *= s;
          served[j] = true;
        } else {
          pr *= 1.0 - s;
        }
      }
      bool all = true;
      for (bool b : served) all = all && b;
      if (all) total += pr;
    }
  }
  return total;
}

/// All-ready term via the product formula written out directly.
inline double direct_all_ready(const OssConfig& cfg, double r) {
  double v = 1.0;
  for (std::size_t i = 0; i < cfg.selected(); ++i) v *= cfg.rd[i];
  for (std::size_t j = 0; j < cfg.n(); ++j) {
    double fail = 1.0;
    for (std::size_t i = 0; i < cfg.selected(); ++i) {
      if (cfg.a(i, j)) fail *= 1.0 - r * (cfg.x(i, j) ? 1.0 : cfg.p(i, j));
    }
    v *= 1.0 - fail;
  }
  return v;
}

/// Host among the available cells of function j whose pre-activation gives
/// the highest function reliability while every other host relies on
/// wakeup, by trying every placement in turn. Ties keep the lowest index.
inline std::size_t brute_force_best_startup(const OssConfig& cfg, std::size_t j, double r) {
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t cand = 0; cand < cfg.m(); ++cand) {
    if (!cfg.a(cand, j)) continue;
    double fail = 1.0;
    for (std::size_t i = 0; i < cfg.m(); ++i) {
      if (!cfg.a(i, j)) continue;
      fail *= 1.0 - cfg.rd[i] * (r * (i == cand ? 1.0 : cfg.p(i, j)));
    }
    const double value = 1.0 - fail;
    if (value > best_value) {
      best_value = value;
      best = cand;
    }
  }
  return best;
}

/// Example-one instance (three OICs, six functions, C = 50).
inline RapInstance example_one() {
  RapInstance inst;
  inst.name = "example-one";
  inst.rd = {0.99, 0.99, 0.99};
  inst.p = RealMatrix{{0.98, 0.9, 0.9, 0.96, 0.87, 0.87},
                      {0.82, 0.82, 0.82, 0.9, 0.9, 0.9},
                      {0.0, 0.9, 0.9, 0.9, 0.9, 0.9}};
  inst.cost = RealMatrix{{4, 5, 4, 1, 1, 35}, {4, 5, 4, 1, 1, 35}, {4, 5, 4, 1, 1, 35}};
  inst.budget = 50;
  inst.function_names = {"ADD", "MOV", "INC", "DEC", "SUB", "DIV"};
  inst.r_sets = {
      {{0.68, 0.72}, {0.73, 0.75}, {0.78, 0.81}, {0.80, 0.88}, {0.89, 0.95}},
      {{0.65, 0.70}, {0.71, 0.73}, {0.80, 0.88}, {0.82, 0.87}, {0.90, 0.92}},
      {{0.60, 0.67}, {0.72, 0.78}, {0.78, 0.83}, {0.80, 0.90}, {0.87, 0.956}},
      {{0.64, 0.65}, {0.72, 0.74}, {0.80, 0.88}, {0.83, 0.85}, {0.90, 0.95}},
      {{0.63, 0.66}, {0.64, 0.68}, {0.65, 0.70}, {0.65, 0.70}, {0.73, 0.74},
       {0.75, 0.79}, {0.76, 0.86}, {0.75, 0.80}, {0.77, 0.80}, {0.75, 0.81},
       {0.78, 0.84}, {0.80, 0.87}, {0.88, 0.92}, {0.89, 0.90}, {0.91, 0.96}}};
  return inst;
}

/// Random small instance with every cell supported.
inline RapInstance random_instance(Rng& rng, std::size_t m, std::size_t n) {
  RapInstance inst;
  inst.p = RealMatrix(m, n);
  inst.cost = RealMatrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    inst.rd.push_back(uniform(rng, 0.8, 1.0));
    for (std::size_t j = 0; j < n; ++j) {
      inst.p(i, j) = uniform(rng, 0.1, 0.95);
      inst.cost(i, j) = double(1 + rng.below(10));
    }
  }
  inst.budget = double(5 + rng.below(20));
  inst.r_sets = {{{0.8, 0.9}}};
  return inst;
}

/// Collapses every position and velocity of `state` to its center.
inline void collapse_to_points(PsoState& state) {
  for (auto& p : state.swarm) {
    for (auto* vec : {&p.pos, &p.vel, &p.pbest_pos}) {
      for (auto& x : *vec) x = Interval(x.center());
    }
  }
}

/// One synchronous Gbest iteration of classical real-valued PSO over the
/// centers of `state`, drawing r1 and r2 per particle from a copy of its
/// stream. Returns the new positions.
inline std::vector<std::vector<double>> classical_gbest_step(const PsoState& state,
                                                             const PsoParams& params) {
  const auto& swarm = state.swarm;
  std::size_t g = 0;
  for (std::size_t k = 1; k < swarm.size(); ++k) {
    const Interval& a = swarm[k].pbest_fitness.value;
    const Interval& b = swarm[g].pbest_fitness.value;
    if (a.hi() > b.hi() || (a.hi() == b.hi() && a.lo() > b.lo())) g = k;
  }
  const double t = double(state.iteration);
  const double T = double(params.iterations);
  const double w = params.iterations == 0 ? params.w1
                                          : (params.w1 - params.w2) * ((T - t) / T) + params.w2;
  Rng rng = state.rng;
  std::vector<std::vector<double>> out;
  for (const auto& p : swarm) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    std::vector<double> x(p.pos.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double pos = p.pos[d].lo();
      double v = w * p.vel[d].lo() + params.phi1 * r1 * (p.pbest_pos[d].lo() - pos) +
                 params.phi2 * r2 * (swarm[g].pbest_pos[d].lo() - pos);
      v = std::clamp(v, -1.0, 1.0);
      x[d] = std::clamp(pos + v, 0.0, 1.0);
    }
    out.push_back(std::move(x));
  }
  return out;
}

/// Largest deviation between the positions of `state` and `expected`.
inline double max_position_error(const PsoState& state,
                                 const std::vector<std::vector<double>>& expected) {
  double err = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    for (std::size_t d = 0; d < expected[k].size(); ++d) {
      const Interval& x = state.swarm[k].pos[d];
      err = std::max({err, std::abs(x.lo() - expected[k][d]), std::abs(x.hi() - expected[k][d])});
    }
  }
  return err;
}

inline std::string data_path(const std::string& name) {
  return std::string(OICREL_DATA_DIR) + "/" + name;
}

}  // namespace oicrel::testing
