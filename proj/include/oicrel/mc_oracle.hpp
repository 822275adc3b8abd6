#pragma once

// Monte Carlo simulation of the One-Shot-System success event. It samples
// the same independence structure the closed form multiplies out, so the
// two routes can be checked against each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "oicrel/oss.hpp"
#include "oicrel/random.hpp"

namespace oicrel {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Trials are split into this many sub-streams regardless of thread count,
/// so the estimate depends only on (cfg, r, trials, seed).
inline constexpr std::size_t kMcPartitions = 16;

namespace detail {

inline std::uint64_t simulate_partition(const OssConfig& cfg, double r_point,
                                        std::uint64_t trials,
                                        std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t w = cfg.selected();
  const std::size_t n = cfg.n();
  std::vector<char> ready(w);
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < w; ++i) ready[i] = rng.bernoulli(cfg.rd[i]);
    bool all_ok = true;
    for (std::size_t j = 0; j < n && all_ok; ++j) {
      bool served = false;
      for (std::size_t i = 0; i < w; ++i) {
        if (!ready[i] || !cfg.a(i, j)) continue;
        const double e = cfg.x(i, j) ? 1.0 : cfg.p(i, j);
        // Every ready host attempts independently; draw even after success
        // so stream consumption does not depend on outcomes.
        if (rng.bernoulli(cell_r(cfg, r_point, i, j) * e)) served = true;
      }
      all_ok = served;
    }
    if (all_ok) ++successes;
  }
  return successes;
}

}  // namespace detail

inline McEstimate simulate(const OssConfig& cfg, double r_point,
                           std::uint64_t trials, std::uint64_t seed,
                           unsigned threads = 0) {
  validate(cfg);
  if (trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
  if (!(r_point >= 0.0 && r_point <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "r outside [0,1]");
  }

  std::vector<std::uint64_t> counts(kMcPartitions, 0);
  auto share = [&](std::size_t part) {
    return trials / kMcPartitions + (part < trials % kMcPartitions ? 1 : 0);
  };
  auto run_part = [&](std::size_t part) {
    counts[part] = detail::simulate_partition(cfg, r_point, share(part),
                                              derive_seed(seed, part));
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, kMcPartitions);
  if (threads == 1) {
    for (std::size_t part = 0; part < kMcPartitions; ++part) run_part(part);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t part = t; part < kMcPartitions; part += threads) {
          run_part(part);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::uint64_t successes = 0;
  for (auto c : counts) successes += c;
  McEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.mean = static_cast<double>(successes) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
  return est;
}

/// |closed - mean| <= max(4 stderr, 1e-3).
inline bool agrees(const McEstimate& est, double closed_form) {
  return std::abs(closed_form - est.mean) <= std::max(4.0 * est.std_error, 1e-3);
}

}  // namespace oicrel
