#pragma once

// Interval Redundancy Allocation Problem: which functions to make available
// (A) and pre-activate (X) on which OICs under a startup-latency budget.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oicrel/error.hpp"
#include "oicrel/interval.hpp"
#include "oicrel/matrix.hpp"
#include "oicrel/oss.hpp"
#include "oicrel/random.hpp"

namespace oicrel {

/// How startup latencies combine into the quantity checked against the
/// budget.
enum class CostModel {
  MaxPerOic,  ///< worst per-OIC sum of startup latencies (default)
  Sum,        ///< sum over every startup bit
};

/// Which reliability expression is the optimization objective.
enum class ObjectiveForm {
  AllReady,    ///< every selected OIC ready (default)
  Enumerated,  ///< readiness-weighted sum over all ready subsets
};

using IntervalSet = std::vector<Interval>;

struct RapInstance {
  std::string name;
  std::vector<double> rd;
  RealMatrix p;
  RealMatrix cost;
  double budget = 0.0;
  /// Candidate mission-reliability sets; the first is the default.
  std::vector<IntervalSet> r_sets;
  std::vector<std::string> function_names;
  /// Cells where the function cannot exist; empty means all supported.
  BitMatrix unsupported;
  CostModel cost_model = CostModel::MaxPerOic;
  ObjectiveForm objective = ObjectiveForm::AllReady;

  std::size_t m() const noexcept { return rd.size(); }
  std::size_t n() const noexcept { return p.cols(); }
  bool supported(std::size_t i, std::size_t j) const {
    return unsupported.size() == 0 || !unsupported(i, j);
  }
};

inline void validate(const RapInstance& inst) {
  const std::size_t m = inst.m();
  const std::size_t n = inst.n();
  if (m == 0 || n == 0) throw Error(ErrorCode::InvalidConfig, "empty instance");
  if (inst.p.rows() != m || !inst.cost.same_shape(inst.p)) {
    throw Error(ErrorCode::ShapeMismatch, "readiness, wakeup and cost shapes");
  }
  if (inst.unsupported.size() != 0 && !inst.unsupported.same_shape(inst.p)) {
    throw Error(ErrorCode::ShapeMismatch, "unsupported mask shape");
  }
  if (!inst.function_names.empty() && inst.function_names.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "function_names length");
  }
  if (!(inst.budget > 0.0)) throw Error(ErrorCode::InvalidConfig, "budget must be > 0");
  for (double c : inst.cost.data()) {
    if (c < 0.0) throw Error(ErrorCode::InvalidConfig, "negative cost");
  }
  for (double v : inst.rd) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidConfig, "readiness");
  }
  for (double v : inst.p.data()) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::InvalidConfig, "wakeup");
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) any = any || inst.supported(i, j);
    if (!any) {
      throw Error(ErrorCode::Unrepairable,
                  "function " + std::to_string(j) + " has no supported OIC");
    }
  }
  for (const auto& set : inst.r_sets) {
    for (const auto& r : set) {
      if (r.lo() < 0.0 || r.hi() > 1.0) {
        throw Error(ErrorCode::InvalidConfig, "mission reliability outside [0,1]");
      }
    }
  }
}

struct Allocation {
  BitMatrix x;  ///< startup
  BitMatrix a;  ///< availability

  /// Copy count per function (column sums of a).
  std::vector<int> copies() const {
    std::vector<int> u(a.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) u[j] += a(i, j);
    }
    return u;
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

inline Allocation empty_allocation(const RapInstance& inst) {
  return {BitMatrix(inst.m(), inst.n()), BitMatrix(inst.m(), inst.n())};
}

struct IntervalFitness {
  Interval value;
  double cost = 0.0;
  bool feasible = false;
};

struct CostCheck {
  double cost = 0.0;
  bool within_budget = true;
};

inline void check_shape(const RapInstance& inst, const Allocation& alloc) {
  if (alloc.x.rows() != inst.m() || alloc.x.cols() != inst.n() ||
      !alloc.a.same_shape(alloc.x)) {
    throw Error(ErrorCode::ShapeMismatch, "allocation shape differs from instance");
  }
}

/// Per-OIC startup latency sums.
inline std::vector<double> row_costs(const RapInstance& inst, const BitMatrix& x) {
  std::vector<double> rows(inst.m(), 0.0);
  for (std::size_t i = 0; i < inst.m(); ++i) {
    for (std::size_t j = 0; j < inst.n(); ++j) {
      if (x(i, j)) rows[i] += inst.cost(i, j);
    }
  }
  return rows;
}

inline double startup_cost(const RapInstance& inst, const BitMatrix& x) {
  const auto rows = row_costs(inst, x);
  if (inst.cost_model == CostModel::Sum) {
    double total = 0.0;
    for (double c : rows) total += c;
    return total;
  }
  return rows.empty() ? 0.0 : *std::max_element(rows.begin(), rows.end());
}

inline CostCheck check_cost(const RapInstance& inst, const Allocation& alloc) {
  check_shape(inst, alloc);
  const double c = startup_cost(inst, alloc.x);
  return {c, c <= inst.budget};
}

inline OssConfig make_config(const RapInstance& inst, const Allocation& alloc,
                             const Interval& r) {
  check_shape(inst, alloc);
  OssConfig cfg;
  cfg.rd = inst.rd;
  cfg.p = inst.p;
  cfg.a = alloc.a;
  cfg.x = alloc.x;
  cfg.r = r;
  cfg.cost = inst.cost;
  cfg.budget = inst.budget;
  return cfg;
}

/// Interval objective, cost and feasibility. Infeasible allocations still
/// get their raw interval.
inline IntervalFitness evaluate(const RapInstance& inst, const Allocation& alloc,
                                const Interval& r) {
  const OssConfig cfg = make_config(inst, alloc, r);
  IntervalFitness fit;
  fit.value = inst.objective == ObjectiveForm::AllReady
                  ? interval_all_ready_reliability(cfg)
                  : interval_system_reliability(cfg);
  const CostCheck cc = check_cost(inst, alloc);
  fit.cost = cc.cost;
  const auto u = alloc.copies();
  fit.feasible = cc.within_budget &&
                 std::all_of(u.begin(), u.end(), [](int c) { return c >= 1; });
  return fit;
}

namespace detail {

// Function reliability with startup, used for repair and greedy moves.
inline double startup_function_reliability(const RapInstance& inst,
                                           const Allocation& alloc,
                                           std::size_t j, double r_point) {
  double all_fail = 1.0;
  for (std::size_t i = 0; i < inst.m(); ++i) {
    if (!alloc.a(i, j)) continue;
    const double e = alloc.x(i, j) ? 1.0 : inst.p(i, j);
    all_fail *= 1.0 - inst.rd[i] * r_point * e;
  }
  return 1.0 - all_fail;
}

// Gain in wakeup-only function reliability from hosting j on OIC i.
inline double wakeup_host_term(const RapInstance& inst, std::size_t i,
                               std::size_t j, double r_point) {
  return inst.rd[i] * r_point * inst.p(i, j);
}

}  // namespace detail

/// Makes an allocation feasible:
///  1. unsupported cells are cleared and x <= a is restored by setting a;
///  2. while over budget, the startup bit with the smallest function
///     reliability loss per cycle is cleared;
///  3. every function without a copy gets one on the supported OIC with the
///     best wakeup-only gain.
/// Feasible input is returned unchanged.
inline Allocation repair(const RapInstance& inst, Allocation alloc,
                         double r_point) {
  check_shape(inst, alloc);
  const std::size_t m = inst.m();
  const std::size_t n = inst.n();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!inst.supported(i, j)) {
        alloc.x(i, j) = 0;
        alloc.a(i, j) = 0;
      } else if (alloc.x(i, j)) {
        alloc.a(i, j) = 1;
      }
    }
  }

  for (;;) {
    const auto rows = row_costs(inst, alloc.x);
    const double total = startup_cost(inst, alloc.x);
    if (total <= inst.budget) break;
    std::optional<std::size_t> pick;
    double pick_ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (inst.cost_model == CostModel::MaxPerOic && rows[i] <= inst.budget) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!alloc.x(i, j) || inst.cost(i, j) <= 0.0) continue;
        const double with = detail::startup_function_reliability(inst, alloc, j, r_point);
        alloc.x(i, j) = 0;
        const double without =
            detail::startup_function_reliability(inst, alloc, j, r_point);
        alloc.x(i, j) = 1;
        const double ratio = (with - without) / inst.cost(i, j);
        if (!pick || ratio < pick_ratio) {
          pick = i * n + j;
          pick_ratio = ratio;
        }
      }
    }
    if (!pick) {
      throw Error(ErrorCode::Unrepairable, "budget cannot be met");
    }
    alloc.x.flat(*pick) = 0;
  }

  const auto u = alloc.copies();
  for (std::size_t j = 0; j < n; ++j) {
    if (u[j] > 0) continue;
    std::optional<std::size_t> host;
    double host_gain = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!inst.supported(i, j)) continue;
      const double gain = detail::wakeup_host_term(inst, i, j, r_point);
      if (gain > host_gain) {
        host_gain = gain;
        host = i;
      }
    }
    if (!host) {
      throw Error(ErrorCode::Unrepairable,
                  "function " + std::to_string(j) + " has no supported OIC");
    }
    alloc.a(*host, j) = 1;
  }
  return alloc;
}

/// Element of `set` maximal under `policy`, found by a left-to-right fold;
/// ties keep the first occurrence.
inline Interval max_interval_in_set(const IntervalSet& set, ComparePolicy policy) {
  if (set.empty()) throw Error(ErrorCode::EmptySet, "interval set is empty");
  Interval best = set.front();
  for (std::size_t k = 1; k < set.size(); ++k) {
    if (better(set[k], best, policy)) best = set[k];
  }
  return best;
}

/// Availability matrix for a published (X, U) pair: every startup cell is
/// available, the remaining copies of each function go to the OICs with the
/// best wakeup-only gain (ties to the lowest index).
inline Allocation place_copies(const RapInstance& inst, const BitMatrix& x,
                               const std::vector<int>& u, double r_point) {
  if (x.rows() != inst.m() || x.cols() != inst.n() || u.size() != inst.n()) {
    throw Error(ErrorCode::ShapeMismatch, "X/U shape differs from instance");
  }
  Allocation alloc{x, x};
  for (std::size_t j = 0; j < inst.n(); ++j) {
    int have = 0;
    for (std::size_t i = 0; i < inst.m(); ++i) have += alloc.a(i, j);
    if (have > u[j]) {
      throw Error(ErrorCode::InvalidConfig,
                  "more startups than copies for function " + std::to_string(j));
    }
    while (have < u[j]) {
      std::optional<std::size_t> host;
      double host_gain = -1.0;
      for (std::size_t i = 0; i < inst.m(); ++i) {
        if (alloc.a(i, j) || !inst.supported(i, j)) continue;
        const double gain = detail::wakeup_host_term(inst, i, j, r_point);
        if (gain > host_gain) {
          host_gain = gain;
          host = i;
        }
      }
      if (!host) {
        throw Error(ErrorCode::InvalidConfig,
                    "not enough OICs for the copies of function " + std::to_string(j));
      }
      alloc.a(*host, j) = 1;
      ++have;
    }
  }
  return alloc;
}

// ---------------------------------------------------------------------------
// Genome: m*n startup bits followed by m*n availability bits, row-major.

using Genome = std::vector<unsigned char>;

inline Genome encode(const Allocation& alloc) {
  Genome g;
  g.reserve(alloc.x.size() * 2);
  g.insert(g.end(), alloc.x.data().begin(), alloc.x.data().end());
  g.insert(g.end(), alloc.a.data().begin(), alloc.a.data().end());
  return g;
}

inline Allocation decode_genome(const Genome& g, std::size_t m, std::size_t n) {
  if (g.size() != 2 * m * n) {
    throw Error(ErrorCode::ShapeMismatch, "genome length is not 2*m*n");
  }
  Allocation alloc{BitMatrix(m, n), BitMatrix(m, n)};
  for (std::size_t k = 0; k < m * n; ++k) {
    alloc.x.flat(k) = g[k] ? 1 : 0;
    alloc.a.flat(k) = g[m * n + k] ? 1 : 0;
  }
  return alloc;
}

/// Uniformly random bits on supported cells, then repaired.
inline Allocation random_allocation(const RapInstance& inst, Rng& rng,
                                    double r_point) {
  Allocation alloc = empty_allocation(inst);
  for (std::size_t k = 0; k < alloc.x.size(); ++k) {
    alloc.x.flat(k) = rng.bernoulli(0.5);
    alloc.a.flat(k) = rng.bernoulli(0.5);
  }
  return repair(inst, std::move(alloc), r_point);
}

// ---------------------------------------------------------------------------
// Text form: X as one bit group per OIC, then U. "101000 000010 101101 / 2 2 2 3 3 3"

inline std::string format_allocation(const Allocation& alloc) {
  std::ostringstream os;
  for (std::size_t i = 0; i < alloc.x.rows(); ++i) {
    if (i) os << ' ';
    for (std::size_t j = 0; j < alloc.x.cols(); ++j) os << int(alloc.x(i, j));
  }
  os << " /";
  for (int c : alloc.copies()) os << ' ' << c;
  return os.str();
}

struct PublishedSolution {
  BitMatrix x;
  std::vector<int> u;
};

/// Parses the text form. X digits may be grouped or spaced arbitrarily; U
/// may carry one trailing entry equal to the number of OICs.
inline PublishedSolution parse_published(const std::string& text, std::size_t m,
                                         std::size_t n) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    throw Error(ErrorCode::ParseError, "expected 'X bits / U counts'");
  }
  PublishedSolution sol{BitMatrix(m, n), {}};
  std::size_t k = 0;
  for (std::size_t pos = 0; pos < slash; ++pos) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') continue;
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::ParseError, std::string("bad X character '") + c + "'");
    }
    if (k >= m * n) throw Error(ErrorCode::ParseError, "too many X bits");
    sol.x.flat(k++) = c == '1';
  }
  if (k != m * n) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(m * n) +
                                           " X bits, got " + std::to_string(k));
  }
  std::istringstream rest(text.substr(slash + 1));
  long v;
  while (rest >> v) sol.u.push_back(static_cast<int>(v));
  if (!rest.eof()) throw Error(ErrorCode::ParseError, "bad U entry");
  if (sol.u.size() == n + 1 && sol.u.back() == static_cast<int>(m)) sol.u.pop_back();
  if (sol.u.size() != n) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(n) + " U entries");
  }
  return sol;
}

/// An instance paired with the mission-reliability interval it is solved
/// for. Repairs use the interval center as the point value of r.
struct BoundProblem {
  const RapInstance& inst;
  Interval r;

  double repair_point() const { return r.center(); }
  IntervalFitness evaluate(const Allocation& alloc) const {
    return oicrel::evaluate(inst, alloc, r);
  }
  Allocation repair(Allocation alloc) const {
    return oicrel::repair(inst, std::move(alloc), repair_point());
  }
  Allocation random(Rng& rng) const {
    return random_allocation(inst, rng, repair_point());
  }
};

inline const char* to_string(CostModel c) {
  return c == CostModel::Sum ? "sum" : "max-per-oic";
}
inline const char* to_string(ObjectiveForm o) {
  return o == ObjectiveForm::Enumerated ? "enumerated" : "all-ready";
}

}  // namespace oicrel
