#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oicrel/interval.hpp"
#include "oicrel/rap.hpp"

namespace oicrel {

struct TracePoint {
  std::size_t iteration = 0;
  Interval best;
  double cost = 0.0;
};

struct ArchiveEntry {
  Allocation alloc;
  IntervalFitness fitness;
};

struct SolverReport {
  std::string solver;
  Allocation best;
  IntervalFitness best_fitness;
  Interval r_used;
  std::vector<TracePoint> trace;  ///< best-so-far per generation/iteration
  std::vector<ArchiveEntry> archive;
  std::uint64_t seed = 0;
  nlohmann::json params;
  double wall_seconds = 0.0;
};

/// Stops when the best-so-far center has moved by less than `delta` over the
/// last `window` trace points.
struct EarlyStop {
  std::size_t window = 50;
  double delta = 1e-9;

  bool should_stop(const std::vector<TracePoint>& trace) const {
    if (window == 0 || trace.size() <= window) return false;
    const double now = trace.back().best.center();
    const double then = trace[trace.size() - 1 - window].best.center();
    return now - then < delta;
  }
};

/// CSV columns: <index_name>,best_lo,best_hi,best_center,cost
inline void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace,
                            const std::string& index_name) {
  os << index_name << ",best_lo,best_hi,best_center,cost\n";
  os.precision(17);
  for (const auto& p : trace) {
    os << p.iteration << ',' << p.best.lo() << ',' << p.best.hi() << ','
       << p.best.center() << ',' << p.cost << '\n';
  }
}

/// True when no trace point is strictly worse than its predecessor under
/// `policy`.
inline bool trace_non_decreasing(const std::vector<TracePoint>& trace,
                                 ComparePolicy policy) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (compare_max(trace[k].best, trace[k - 1].best, policy).less()) return false;
  }
  return true;
}

inline nlohmann::json interval_json(const Interval& x) {
  return nlohmann::json::array({x.lo(), x.hi()});
}

inline nlohmann::json to_json(const SolverReport& rep) {
  nlohmann::json j;
  j["solver"] = rep.solver;
  j["seed"] = rep.seed;
  j["params"] = rep.params;
  j["r_used"] = interval_json(rep.r_used);
  j["best"] = {{"allocation", format_allocation(rep.best)},
               {"value", interval_json(rep.best_fitness.value)},
               {"cost", rep.best_fitness.cost},
               {"feasible", rep.best_fitness.feasible}};
  j["wall_seconds"] = rep.wall_seconds;
  auto arch = nlohmann::json::array();
  for (const auto& e : rep.archive) {
    arch.push_back({{"allocation", format_allocation(e.alloc)},
                    {"value", interval_json(e.fitness.value)},
                    {"cost", e.fitness.cost}});
  }
  j["archive"] = arch;
  return j;
}

}  // namespace oicrel
