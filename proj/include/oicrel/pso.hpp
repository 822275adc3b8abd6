#pragma once

// Interval particle swarm over the (X|A) genome. Each genome dimension holds
// an interval position and velocity in the box [0,1]; a particle decodes to
// an Allocation by thresholding component centers at 0.5 and repairing.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oicrel/interval.hpp"
#include "oicrel/rap.hpp"
#include "oicrel/random.hpp"
#include "oicrel/report.hpp"

namespace oicrel {

enum class PsoVariant { Gbest, Lbest };

inline const char* to_string(PsoVariant v) {
  return v == PsoVariant::Lbest ? "lbest" : "gbest";
}

inline PsoVariant parse_variant(const std::string& s) {
  if (s == "gbest") return PsoVariant::Gbest;
  if (s == "lbest") return PsoVariant::Lbest;
  throw Error(ErrorCode::InvalidConfig, "variant must be gbest or lbest, got '" + s + "'");
}

struct PsoParams {
  std::size_t swarm = 30;
  std::size_t iterations = 50;
  std::size_t archive = 15;
  double phi1 = 0.99876;
  double phi2 = 0.99678;
  double w1 = 0.8999;
  double w2 = 0.2466;
  std::size_t neighborhood = 3;
  PsoVariant variant = PsoVariant::Gbest;
  /// Moore subtraction widens every position toward the whole box within a
  /// few iterations, which pins all centers near 0.5.
  SubtractionMode sub_mode = SubtractionMode::AsPrinted;
  std::uint64_t seed = 1;
  std::optional<EarlyStop> early_stop;

  static PsoParams example_one() { return {}; }
  static PsoParams example_two() {
    PsoParams p;
    p.swarm = 50;
    p.iterations = 100;
    p.phi1 = 1.69876;
    p.phi2 = 0.19678;
    p.w1 = 0.20;
    p.w2 = 0.10;
    return p;
  }

  void validate() const {
    if (swarm < 2) throw Error(ErrorCode::InvalidConfig, "swarm must be >= 2");
    if (archive < 1) throw Error(ErrorCode::InvalidConfig, "archive must be >= 1");
    if (neighborhood < 1 || neighborhood % 2 == 0) {
      throw Error(ErrorCode::InvalidConfig, "neighborhood must be odd and >= 1");
    }
  }
};

inline nlohmann::json to_json(const PsoParams& p) {
  nlohmann::json j{{"swarm", p.swarm},
                   {"iterations", p.iterations},
                   {"archive", p.archive},
                   {"phi1", p.phi1},
                   {"phi2", p.phi2},
                   {"w1", p.w1},
                   {"w2", p.w2},
                   {"neighborhood", p.neighborhood},
                   {"variant", to_string(p.variant)},
                   {"sub_mode", p.sub_mode == SubtractionMode::Moore ? "moore" : "as-printed"},
                   {"seed", p.seed}};
  if (p.early_stop) {
    j["early_stop"] = {{"window", p.early_stop->window}, {"delta", p.early_stop->delta}};
  }
  return j;
}

using IntervalVector = std::vector<Interval>;

struct Particle {
  IntervalVector pos;
  IntervalVector vel;
  IntervalFitness fitness;
  IntervalVector pbest_pos;
  IntervalFitness pbest_fitness;
};

/// Linear schedule from w1 at t = 0 to w2 at t = t_max.
inline double inertia(std::size_t t, std::size_t t_max, double w1, double w2) {
  if (t_max == 0) return w1;
  return (w1 - w2) * (double(t_max - t) / double(t_max)) + w2;
}

/// v' = w v + phi1 r1 (pbest - pos) + phi2 r2 (best - pos), componentwise in
/// interval arithmetic, then clamped to [-1, 1].
inline IntervalVector update_velocity(const IntervalVector& pos, const IntervalVector& vel,
                                      const IntervalVector& pbest,
                                      const IntervalVector& best, double w, double phi1,
                                      double phi2, double r1, double r2,
                                      SubtractionMode mode = SubtractionMode::AsPrinted) {
  IntervalVector out(pos.size());
  for (std::size_t d = 0; d < pos.size(); ++d) {
    const Interval v = scale(w, vel[d]) + scale(phi1 * r1, sub(pbest[d], pos[d], mode)) +
                       scale(phi2 * r2, sub(best[d], pos[d], mode));
    out[d] = clamp(v, -1.0, 1.0);
  }
  return out;
}

/// pos + vel, clamped to [0, 1].
inline IntervalVector move(const IntervalVector& pos, const IntervalVector& vel) {
  IntervalVector out(pos.size());
  for (std::size_t d = 0; d < pos.size(); ++d) out[d] = clamp(pos[d] + vel[d], 0.0, 1.0);
  return out;
}

inline Allocation decode(const BoundProblem& problem, const IntervalVector& pos) {
  Genome g(pos.size());
  for (std::size_t d = 0; d < pos.size(); ++d) g[d] = pos[d].center() > 0.5;
  return problem.repair(decode_genome(g, problem.inst.m(), problem.inst.n()));
}

/// Degenerate positions [b, b] for the bits of `alloc`.
inline IntervalVector encode_position(const Allocation& alloc) {
  IntervalVector pos;
  for (unsigned char b : encode(alloc)) pos.emplace_back(b ? 1.0 : 0.0);
  return pos;
}

/// Top-k distinct allocations ordered by the Combined policy. A newcomer
/// goes in front of the first entry it strictly beats; otherwise it is
/// appended while there is room.
class Archive {
 public:
  explicit Archive(std::size_t capacity) : capacity_(capacity) {}

  void offer(const Allocation& alloc, const IntervalFitness& fit) {
    for (const auto& e : entries_) {
      if (e.alloc == alloc) return;
    }
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ArchiveEntry& e) {
      return better(fit.value, e.fitness.value, ComparePolicy::Combined);
    });
    if (it == entries_.end() && entries_.size() >= capacity_) return;
    entries_.insert(it, ArchiveEntry{alloc, fit});
    if (entries_.size() > capacity_) entries_.pop_back();
  }

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  const ArchiveEntry& head() const { return entries_.front(); }

 private:
  std::size_t capacity_;
  std::vector<ArchiveEntry> entries_;
};

struct PsoState {
  std::vector<Particle> swarm;
  Archive archive{1};
  std::size_t iteration = 0;
  Rng rng{0};
};

namespace pso_detail {

inline bool optimistic_better(const IntervalFitness& a, const IntervalFitness& b) {
  return better(a.value, b.value, ComparePolicy::Optimistic);
}

// Left-to-right fold over pbests, so the result never depends on scheduling.
inline std::size_t global_best(const std::vector<Particle>& swarm) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < swarm.size(); ++k) {
    if (optimistic_better(swarm[k].pbest_fitness, swarm[best].pbest_fitness)) best = k;
  }
  return best;
}

// Best pbest on the ring segment [k - h, k + h], scanned from k - h upward.
inline std::size_t local_best(const std::vector<Particle>& swarm, std::size_t k,
                              std::size_t neighborhood) {
  const std::size_t s = swarm.size();
  const std::size_t h = std::min(neighborhood / 2, (s - 1) / 2);
  std::size_t best = (k + s - h) % s;
  for (std::size_t off = 1; off <= 2 * h; ++off) {
    const std::size_t q = (k + s - h + off) % s;
    if (optimistic_better(swarm[q].pbest_fitness, swarm[best].pbest_fitness)) best = q;
  }
  return best;
}

}  // namespace pso_detail

inline PsoState init_swarm(const BoundProblem& problem, const PsoParams& params) {
  params.validate();
  validate(problem.inst);
  const std::size_t dims = 2 * problem.inst.m() * problem.inst.n();

  // Position widths come from the spread of the instance's interval sets.
  std::vector<double> radii;
  for (const auto& set : problem.inst.r_sets) {
    for (const auto& r : set) radii.push_back(r.radius());
  }
  if (radii.empty()) radii.push_back(problem.r.radius());

  PsoState state;
  state.rng = Rng(params.seed);
  state.archive = Archive(params.archive);
  state.swarm.resize(params.swarm);
  for (auto& p : state.swarm) {
    p.pos.resize(dims);
    p.vel.assign(dims, Interval(0.0));
    for (auto& x : p.pos) {
      const double c = state.rng.uniform();
      const double rad = radii[state.rng.below(radii.size())];
      x = clamp(Interval::from_center_radius(c, rad), 0.0, 1.0);
    }
    const Allocation alloc = decode(problem, p.pos);
    p.fitness = problem.evaluate(alloc);
    p.pbest_pos = p.pos;
    p.pbest_fitness = p.fitness;
    state.archive.offer(alloc, p.fitness);
  }
  return state;
}

/// One synchronous iteration: every particle moves against the bests of the
/// previous iteration, then pbests and the archive are refreshed.
inline void step(PsoState& state, const BoundProblem& problem, const PsoParams& params) {
  const double w = inertia(state.iteration, params.iterations, params.w1, params.w2);
  std::vector<std::size_t> guide(state.swarm.size());
  if (params.variant == PsoVariant::Gbest) {
    std::fill(guide.begin(), guide.end(), pso_detail::global_best(state.swarm));
  } else {
    for (std::size_t k = 0; k < guide.size(); ++k) {
      guide[k] = pso_detail::local_best(state.swarm, k, params.neighborhood);
    }
  }
  std::vector<IntervalVector> guides;
  guides.reserve(guide.size());
  for (std::size_t g : guide) guides.push_back(state.swarm[g].pbest_pos);

  for (std::size_t k = 0; k < state.swarm.size(); ++k) {
    Particle& p = state.swarm[k];
    const double r1 = state.rng.uniform();
    const double r2 = state.rng.uniform();
    p.vel = update_velocity(p.pos, p.vel, p.pbest_pos, guides[k], w, params.phi1,
                            params.phi2, r1, r2, params.sub_mode);
    p.pos = move(p.pos, p.vel);
    const Allocation alloc = decode(problem, p.pos);
    p.fitness = problem.evaluate(alloc);
    if (pso_detail::optimistic_better(p.fitness, p.pbest_fitness)) {
      p.pbest_pos = p.pos;
      p.pbest_fitness = p.fitness;
    }
    state.archive.offer(alloc, p.fitness);
  }
  ++state.iteration;
}

inline SolverReport run_pso(const RapInstance& inst, const Interval& r,
                            const PsoParams& params) {
  const auto start = std::chrono::steady_clock::now();
  const BoundProblem problem{inst, r};
  PsoState state = init_swarm(problem, params);

  SolverReport rep;
  rep.solver = std::string("pso-") + to_string(params.variant);
  rep.seed = params.seed;
  rep.params = to_json(params);
  rep.r_used = r;
  auto record = [&] {
    const auto& h = state.archive.head();
    rep.trace.push_back({state.iteration, h.fitness.value, h.fitness.cost});
  };
  record();
  for (std::size_t t = 0; t < params.iterations; ++t) {
    step(state, problem, params);
    record();
    if (params.early_stop && params.early_stop->should_stop(rep.trace)) break;
  }
  rep.best = state.archive.head().alloc;
  rep.best_fitness = state.archive.head().fitness;
  rep.archive = state.archive.entries();
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace oicrel
