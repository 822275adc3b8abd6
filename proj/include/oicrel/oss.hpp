#pragma once

// One-Shot-System reliability of a multi-core system whose conventional
// cores are backed by warm-standby One Instruction Cores (OICs).
//
// Rows index OICs (i), columns index functions (j). The selected set of
// OICs is the first `w` rows.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oicrel/error.hpp"
#include "oicrel/interval.hpp"
#include "oicrel/matrix.hpp"

namespace oicrel {

/// Hard cap on the number of selected OICs for subset enumeration.
inline constexpr std::size_t kMaxEnumeratedOics = 20;

/// Logical-element counts from FPGA synthesis of the reference design.
inline constexpr double kOicLogicalElements = 530.0;
inline constexpr double kMipsCoreLogicalElements = 19988.0;

struct OssConfig {
  std::vector<double> rd;  ///< readiness per OIC, length m
  RealMatrix p;            ///< wakeup probability, m x n
  BitMatrix a;             ///< availability, m x n
  BitMatrix x;             ///< startup strategy, m x n
  Interval r{1.0};         ///< mission reliability r(t)
  /// Optional per-cell mission reliability; replaces the scalar r when set.
  std::optional<RealMatrix> r_cell;
  RealMatrix cost;         ///< startup latency in cycles, m x n (may be empty)
  double budget = 0.0;     ///< latency budget C
  std::size_t w = 0;       ///< selected OICs (first w rows); 0 means all m
  std::size_t active_cores = 1;  ///< L

  std::size_t m() const noexcept { return rd.size(); }
  std::size_t n() const noexcept { return p.cols(); }
  std::size_t selected() const noexcept { return w == 0 ? m() : w; }
};

namespace detail {

inline bool is_probability(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace detail

/// Throws InvalidConfig / ShapeMismatch when the configuration breaks an
/// invariant.
inline void validate(const OssConfig& cfg) {
  const std::size_t m = cfg.m();
  const std::size_t n = cfg.n();
  if (cfg.p.rows() != m || cfg.a.rows() != m || cfg.x.rows() != m ||
      cfg.a.cols() != n || cfg.x.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, "rd, p, a and x disagree on m x n");
  }
  if (cfg.cost.size() != 0 && !cfg.cost.same_shape(cfg.p)) {
    throw Error(ErrorCode::ShapeMismatch, "cost matrix shape");
  }
  if (cfg.r_cell && !cfg.r_cell->same_shape(cfg.p)) {
    throw Error(ErrorCode::ShapeMismatch, "per-cell r matrix shape");
  }
  if (m == 0) throw Error(ErrorCode::InvalidConfig, "no OICs");
  if (cfg.w > m) throw Error(ErrorCode::InvalidConfig, "w exceeds m");
  for (double v : cfg.rd) {
    if (!detail::is_probability(v)) {
      throw Error(ErrorCode::InvalidConfig, "readiness outside [0,1]");
    }
  }
  for (double v : cfg.p.data()) {
    if (!detail::is_probability(v)) {
      throw Error(ErrorCode::InvalidConfig, "wakeup probability outside [0,1]");
    }
  }
  if (!detail::is_probability(cfg.r.lo()) || !detail::is_probability(cfg.r.hi())) {
    throw Error(ErrorCode::InvalidConfig, "mission reliability outside [0,1]");
  }
  if (cfg.r_cell) {
    for (double v : cfg.r_cell->data()) {
      if (!detail::is_probability(v)) {
        throw Error(ErrorCode::InvalidConfig, "per-cell r outside [0,1]");
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cfg.x(i, j) > 1 || cfg.a(i, j) > 1) {
        throw Error(ErrorCode::InvalidConfig, "x and a must be binary");
      }
      if (cfg.x(i, j) && !cfg.a(i, j)) {
        throw Error(ErrorCode::InvalidConfig,
                    "startup on a cell where the function is unavailable");
      }
    }
  }
}

/// E_ij = 1 where the function was pre-activated, p_ij otherwise.
inline RealMatrix effective_wakeup(const BitMatrix& x, const RealMatrix& p) {
  if (!x.same_shape(p)) {
    throw Error(ErrorCode::ShapeMismatch, "x and p differ in shape");
  }
  RealMatrix e(p.rows(), p.cols());
  for (std::size_t k = 0; k < p.size(); ++k) {
    e.flat(k) = (1.0 - p.flat(k)) * x.flat(k) + p.flat(k);
  }
  return e;
}

namespace detail {

inline void check_enumerable(const OssConfig& cfg) {
  if (cfg.selected() > kMaxEnumeratedOics) {
    throw Error(ErrorCode::EnumerationTooLarge,
                "subset enumeration limited to " +
                    std::to_string(kMaxEnumeratedOics) + " selected OICs");
  }
}

inline double cell_r(const OssConfig& cfg, double r_point, std::size_t i,
                     std::size_t j) {
  return cfg.r_cell ? (*cfg.r_cell)(i, j) : r_point;
}

/// P(all functions performed | exactly the OICs flagged by `is_ready`).
/// `r_of(i, j)` gives the mission reliability for the cell.
template <typename ReadyFn, typename RFn>
double all_functions_work(const OssConfig& cfg, const RealMatrix& e,
                          ReadyFn&& is_ready, RFn&& r_of) {
  double prob = 1.0;
  for (std::size_t j = 0; j < cfg.n(); ++j) {
    double all_fail = 1.0;
    for (std::size_t i = 0; i < cfg.selected(); ++i) {
      // a_ij = 0 contributes a factor of one.
      if (is_ready(i) && cfg.a(i, j)) {
        all_fail *= 1.0 - r_of(i, j) * e(i, j);
      }
    }
    prob *= 1.0 - all_fail;
  }
  return prob;
}

inline auto mask_ready(std::uint32_t ready) {
  return [ready](std::size_t i) { return (ready >> i & 1u) != 0; };
}

inline double readiness_weight(const std::vector<double>& rd, std::size_t w,
                               std::uint32_t ready) {
  double weight = 1.0;
  for (std::size_t i = 0; i < w; ++i) {
    weight *= (ready >> i & 1u) ? rd[i] : 1.0 - rd[i];
  }
  return weight;
}

/// Sum over every nonempty ready subset of the selected OICs.
/// `r_of(i, j, ready_count)` supplies the mission reliability.
template <typename RFn>
double enumerate_ready_subsets(const OssConfig& cfg, RFn&& r_of) {
  check_enumerable(cfg);
  const RealMatrix e = effective_wakeup(cfg.x, cfg.p);
  const std::size_t w = cfg.selected();
  const std::uint32_t full = (1u << w) - 1u;
  double total = 0.0;
  for (std::uint32_t ready = full; ready != 0; --ready) {
    const int count = std::popcount(ready);
    const double weight = readiness_weight(cfg.rd, w, ready);
    if (weight == 0.0) continue;
    total += weight * all_functions_work(cfg, e, mask_ready(ready),
                                         [&](std::size_t i, std::size_t j) {
                                           return r_of(i, j, count);
                                         });
  }
  return total;
}

}  // namespace detail

/// Reliability when every selected OIC is ready (k = 0 term).
inline double reliability_all_ready(const OssConfig& cfg, double r_point) {
  validate(cfg);
  const std::size_t w = cfg.selected();
  const RealMatrix e = effective_wakeup(cfg.x, cfg.p);
  double readiness = 1.0;
  for (std::size_t i = 0; i < w; ++i) readiness *= cfg.rd[i];
  return readiness *
         detail::all_functions_work(cfg, e, [](std::size_t) { return true; },
                                    [&](std::size_t i, std::size_t j) {
                                      return detail::cell_r(cfg, r_point, i, j);
                                    });
}

/// Full warm-standby reliability: readiness-weighted sum over every
/// nonempty ready subset of the selected OICs.
inline double system_reliability(const OssConfig& cfg, double r_point) {
  validate(cfg);
  return detail::enumerate_ready_subsets(
      cfg, [&](std::size_t i, std::size_t j, int) {
        return detail::cell_r(cfg, r_point, i, j);
      });
}

/// [S(r.lo), S(r.hi)]; S is monotone in r.
inline Interval interval_system_reliability(const OssConfig& cfg) {
  return Interval(system_reliability(cfg, cfg.r.lo()),
                  system_reliability(cfg, cfg.r.hi()));
}

/// Interval form of the all-ready objective.
inline Interval interval_all_ready_reliability(const OssConfig& cfg) {
  return Interval(reliability_all_ready(cfg, cfg.r.lo()),
                  reliability_all_ready(cfg, cfg.r.hi()));
}

/// Sum of readiness weights over all 2^w subsets, the empty one included.
/// Equals one up to rounding.
inline double readiness_partition_sum(const std::vector<double>& rd) {
  if (rd.size() > kMaxEnumeratedOics) {
    throw Error(ErrorCode::EnumerationTooLarge, "too many OICs to enumerate");
  }
  const std::size_t w = rd.size();
  double total = 0.0;
  for (std::uint32_t s = 0; s < (1u << w); ++s) {
    total += detail::readiness_weight(rd, w, s);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Special cases.

/// Identical readiness: weights collapse to rd^(w-k) (1-rd)^k.
inline double special_case_identical_readiness(const OssConfig& cfg, double rd,
                                               double r_point) {
  validate(cfg);
  detail::check_enumerable(cfg);
  const std::size_t w = cfg.selected();
  for (std::size_t i = 0; i < w; ++i) {
    if (cfg.rd[i] != rd) {
      throw Error(ErrorCode::NonUniformReadiness, "readiness values differ");
    }
  }
  const RealMatrix e = effective_wakeup(cfg.x, cfg.p);
  double total = 0.0;
  for (std::uint32_t ready = 1; ready < (1u << w); ++ready) {
    const int good = std::popcount(ready);
    const int failed = static_cast<int>(w) - good;
    const double weight = std::pow(rd, good) * std::pow(1.0 - rd, failed);
    if (weight == 0.0) continue;
    total += weight * detail::all_functions_work(
                          cfg, e, detail::mask_ready(ready), [&](std::size_t i, std::size_t j) {
                            return detail::cell_r(cfg, r_point, i, j);
                          });
  }
  return total;
}

/// m = n with X = A = identity: every function has exactly one host.
inline double special_case_series(const std::vector<double>& rd,
                                  double r_point) {
  double prod = 1.0;
  for (double v : rd) prod *= v * r_point;
  return prod;
}

/// Every function available and awake on every OIC with r = 1.
inline double special_case_parallel(const std::vector<double>& rd) {
  double all_failed = 1.0;
  for (double v : rd) all_failed *= 1.0 - v;
  return 1.0 - all_failed;
}

/// Identical components: p_ij = P_j for every OIC. Each function's failure
/// product splits into hosts without startup (1 - r P_j) and hosts with
/// startup (1 - r), so only the two counts per subset matter.
inline double special_case_identical_components(const OssConfig& cfg,
                                                const std::vector<double>& wake,
                                                double r_point) {
  validate(cfg);
  detail::check_enumerable(cfg);
  const std::size_t w = cfg.selected();
  const std::size_t n = cfg.n();
  if (wake.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "P must have one entry per function");
  }
  for (std::size_t i = 0; i < w; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (cfg.p(i, j) != wake[j]) {
        throw Error(ErrorCode::NonIdenticalWakeup, "p_ij differs across OICs");
      }
    }
  }
  // Bitmasks of hosts per function, split by startup.
  std::vector<std::uint32_t> awake_hosts(n, 0), started_hosts(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < w; ++i) {
      if (!cfg.a(i, j)) continue;
      if (cfg.x(i, j)) {
        started_hosts[j] |= 1u << i;
      } else {
        awake_hosts[j] |= 1u << i;
      }
    }
  }
  double total = 0.0;
  for (std::uint32_t ready = 1; ready < (1u << w); ++ready) {
    double works = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const int without = std::popcount(ready & awake_hosts[j]);
      const int with = std::popcount(ready & started_hosts[j]);
      works *= 1.0 - std::pow(1.0 - r_point * wake[j], without) *
                         std::pow(1.0 - r_point, with);
    }
    total += detail::readiness_weight(cfg.rd, w, ready) * works;
  }
  return total;
}

/// One conventional core served by a single OIC.
inline double single_core_single_oic(const OssConfig& cfg, double r_point) {
  validate(cfg);
  if (cfg.m() != 1 || cfg.selected() != 1) {
    throw Error(ErrorCode::InvalidConfig, "expects exactly one OIC");
  }
  double prod = cfg.rd[0];
  for (std::size_t j = 0; j < cfg.n(); ++j) {
    if (!cfg.a(0, j)) return 0.0;
    const double e = cfg.x(0, j) ? 1.0 : cfg.p(0, j);
    prod *= detail::cell_r(cfg, r_point, 0, j) * e;
  }
  return prod;
}

// ---------------------------------------------------------------------------
// Function-level reliability and best startup placement.

namespace detail {

// 1 - prod_{i in I_j} [1 - rd_i (1 - (1 - r e_i)^{a_ij})] with e_i from `e_of`.
template <typename EFn>
double function_reliability_with(const OssConfig& cfg, std::size_t j,
                                 double r_point, EFn&& e_of) {
  double all_fail = 1.0;
  for (std::size_t i = 0; i < cfg.selected(); ++i) {
    if (!cfg.a(i, j)) continue;
    const double host_works = cell_r(cfg, r_point, i, j) * e_of(i);
    all_fail *= 1.0 - cfg.rd[i] * host_works;
  }
  return 1.0 - all_fail;
}

}  // namespace detail

/// Reliability of function j over the OICs hosting it. With
/// `use_startup = false` every host relies on its wakeup probability.
inline double function_reliability(const OssConfig& cfg, std::size_t j,
                                   bool use_startup, double r_point) {
  if (j >= cfg.n()) throw Error(ErrorCode::InvalidConfig, "function index");
  return detail::function_reliability_with(cfg, j, r_point, [&](std::size_t i) {
    return (use_startup && cfg.x(i, j)) ? 1.0 : cfg.p(i, j);
  });
}

/// Host of function j whose pre-activation maximizes the function's
/// reliability when every other host relies on wakeup. Only hosts with
/// a_ij = 1 for which `allowed(i)` holds are candidates; ties go to the
/// lowest index.
template <typename Allowed>
std::size_t best_startup_for_function(const OssConfig& cfg, std::size_t j,
                                      double r_point, Allowed&& allowed) {
  if (j >= cfg.n()) throw Error(ErrorCode::InvalidConfig, "function index");
  std::optional<std::size_t> best;
  double best_value = -1.0;
  for (std::size_t cand = 0; cand < cfg.selected(); ++cand) {
    if (!cfg.a(cand, j) || !allowed(cand)) continue;
    const double value = detail::function_reliability_with(
        cfg, j, r_point,
        [&](std::size_t l) { return l == cand ? 1.0 : cfg.p(l, j); });
    if (value > best_value) {
      best_value = value;
      best = cand;
    }
  }
  if (!best) {
    throw Error(ErrorCode::NoCandidate,
                "no host available for function " + std::to_string(j));
  }
  return *best;
}

inline std::size_t best_startup_for_function(const OssConfig& cfg,
                                             std::size_t j, double r_point) {
  return best_startup_for_function(cfg, j, r_point,
                                   [](std::size_t) { return true; });
}

// ---------------------------------------------------------------------------
// Time-dependent reliability.

struct ErlangParams {
  /// Failure rate per active conventional core (1/hour), length L.
  std::vector<double> rates;
  /// Shape. Unset means |ready subset| + 1 for every term of the sum.
  std::optional<unsigned> beta;

  static ErlangParams from_element_counts(double element_scale,
                                          const std::vector<double>& elements,
                                          std::optional<unsigned> beta = {}) {
    ErlangParams params;
    params.beta = beta;
    for (double count : elements) params.rates.push_back(element_scale * count);
    return params;
  }
};

namespace detail {

inline void check_rates(const std::vector<double>& rates, unsigned beta) {
  if (rates.empty()) throw Error(ErrorCode::InvalidConfig, "no failure rates");
  for (double l : rates) {
    if (!(l > 0.0)) throw Error(ErrorCode::InvalidConfig, "rates must be > 0");
  }
  if (beta < 1) throw Error(ErrorCode::InvalidConfig, "beta must be >= 1");
}

// Adds prod_i (rate_i t)^{k_i}/k_i! over multi-indices with sum(k) <= budget.
inline double multi_index_sum(const std::vector<double>& rt, std::size_t core,
                              unsigned budget, double acc) {
  if (core == rt.size()) return acc;
  double total = 0.0;
  double term = 1.0;
  for (unsigned k = 0; k <= budget; ++k) {
    if (k > 0) term *= rt[core] / k;
    total += multi_index_sum(rt, core + 1, budget - k, acc * term);
  }
  return total;
}

}  // namespace detail

/// Erlang reliability of L active cores with shape beta: the probability
/// that fewer than beta failures (pooled across cores) occur by time t.
inline double erlang_reliability(double t, const std::vector<double>& rates,
                                 unsigned beta) {
  if (t < 0.0) throw Error(ErrorCode::NegativeTime, "t must be >= 0");
  detail::check_rates(rates, beta);
  double total_rate = 0.0;
  std::vector<double> rt;
  rt.reserve(rates.size());
  for (double l : rates) {
    total_rate += l;
    rt.push_back(l * t);
  }
  if (rates.size() == 1) {
    const double lt = rt[0];
    double term = 1.0;
    double sum = 1.0;
    for (unsigned k = 1; k < beta; ++k) {
      term *= lt / k;
      sum += term;
    }
    return sum * std::exp(-lt);
  }
  return std::exp(-total_rate * t) *
         detail::multi_index_sum(rt, 0, beta - 1, 1.0);
}

/// System reliability with r(t) taken from the Erlang model at time t.
inline double time_dependent_system_reliability(const OssConfig& cfg,
                                                const ErlangParams& params,
                                                double t) {
  validate(cfg);
  if (t < 0.0) throw Error(ErrorCode::NegativeTime, "t must be >= 0");
  if (params.beta) {
    const double r = erlang_reliability(t, params.rates, *params.beta);
    return detail::enumerate_ready_subsets(
        cfg, [&](std::size_t, std::size_t, int) { return r; });
  }
  std::vector<double> by_count(cfg.selected() + 1);
  for (std::size_t c = 1; c <= cfg.selected(); ++c) {
    by_count[c] =
        erlang_reliability(t, params.rates, static_cast<unsigned>(c + 1));
  }
  return detail::enumerate_ready_subsets(
      cfg, [&](std::size_t, std::size_t, int count) { return by_count[count]; });
}

/// Mean time to failure: integral of the time-dependent reliability over
/// [0, inf), truncated where the integrand drops below 1e-12.
inline double mttf(const OssConfig& cfg, const ErlangParams& params) {
  validate(cfg);
  auto integrand = [&](double t) {
    return time_dependent_system_reliability(cfg, params, t);
  };
  double rate = 0.0;
  for (double l : params.rates) rate += l;
  if (!(rate > 0.0)) throw Error(ErrorCode::InvalidConfig, "rates must be > 0");

  double t_cut = 1.0 / rate;
  constexpr double kTail = 1e-12;
  constexpr int kMaxDoublings = 200;
  int doublings = 0;
  while (integrand(t_cut) >= kTail) {
    t_cut *= 2.0;
    if (++doublings > kMaxDoublings || !std::isfinite(t_cut)) {
      throw Error(ErrorCode::NonConvergence,
                  "reliability does not decay; MTTF is unbounded");
    }
  }
  // Split at the mean time scale so the kernel sees the decay region.
  double error = 0.0;
  double total = 0.0;
  double lo = 0.0;
  double hi = std::min(t_cut, 1.0 / rate);
  while (lo < t_cut) {
    double piece_error = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, lo, hi, 20, 1e-10, &piece_error);
    error += piece_error;
    lo = hi;
    hi = std::min(t_cut, hi * 2.0);
  }
  if (!(error <= 1e-8 * std::max(total, 1e-300)) || !std::isfinite(total)) {
    throw Error(ErrorCode::NonConvergence, "quadrature did not converge");
  }
  return total;
}

}  // namespace oicrel
