#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>

#include "oicrel/error.hpp"

namespace oicrel {

/// Closed real interval [lo, hi]. Endpoints are plain doubles; there is no
/// outward rounding, so results are enclosures only up to floating-point
/// error.
class Interval {
 public:
  constexpr Interval() = default;
  /// A single value is the degenerate interval [v, v].
  constexpr explicit Interval(double v) : lo_(v), hi_(v) {}
  /// Endpoints given in either order are normalized so that lo <= hi.
  constexpr Interval(double a, double b)
      : lo_(a <= b ? a : b), hi_(a <= b ? b : a) {}

  /// Builds <center, radius>; a negative radius is rejected.
  static Interval from_center_radius(double center, double radius) {
    if (!(radius >= 0.0)) {
      throw Error(ErrorCode::InvalidConfig, "interval radius must be >= 0");
    }
    return Interval(center - radius, center + radius);
  }

  constexpr double lo() const noexcept { return lo_; }
  constexpr double hi() const noexcept { return hi_; }
  constexpr double center() const noexcept { return (lo_ + hi_) / 2.0; }
  constexpr double radius() const noexcept { return (hi_ - lo_) / 2.0; }
  constexpr double width() const noexcept { return hi_ - lo_; }

  constexpr bool contains(double v) const noexcept {
    return lo_ <= v && v <= hi_;
  }
  /// True when `other` lies inside this interval.
  constexpr bool contains(const Interval& other) const noexcept {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  constexpr bool is_degenerate() const noexcept { return lo_ == hi_; }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

enum class SubtractionMode {
  Moore,      ///< [x.lo - y.hi, x.hi - y.lo]
  AsPrinted,  ///< [x.lo - y.lo, x.hi - y.hi], endpoints swapped if inverted
};

inline Interval add(const Interval& x, const Interval& y) {
  return Interval(x.lo() + y.lo(), x.hi() + y.hi());
}

inline Interval sub(const Interval& x, const Interval& y,
                    SubtractionMode mode = SubtractionMode::Moore) {
  if (mode == SubtractionMode::Moore) {
    return Interval(x.lo() - y.hi(), x.hi() - y.lo());
  }
  return Interval(x.lo() - y.lo(), x.hi() - y.hi());
}

inline Interval scale(double lambda, const Interval& x) {
  if (lambda >= 0.0) return Interval(lambda * x.lo(), lambda * x.hi());
  return Interval(lambda * x.hi(), lambda * x.lo());
}

inline Interval mul(const Interval& x, const Interval& y) {
  const double a = x.lo() * y.lo();
  const double b = x.lo() * y.hi();
  const double c = x.hi() * y.lo();
  const double d = x.hi() * y.hi();
  return Interval(std::min({a, b, c, d}), std::max({a, b, c, d}));
}

/// y / x. Throws ZeroInDivisor when 0 lies in x.
inline Interval div(const Interval& y, const Interval& x) {
  if (x.lo() <= 0.0 && 0.0 <= x.hi()) {
    throw Error(ErrorCode::ZeroInDivisor, "divisor interval contains zero");
  }
  // Endpoint quotients rather than y * (1/x), so point intervals divide exactly.
  const double a = y.lo() / x.lo();
  const double b = y.lo() / x.hi();
  const double c = y.hi() / x.lo();
  const double d = y.hi() / x.hi();
  return Interval(std::min({a, b, c, d}), std::max({a, b, c, d}));
}

inline Interval pow(const Interval& x, unsigned n) {
  if (n == 0) return Interval(1.0);
  const double lo_n = std::pow(x.lo(), static_cast<double>(n));
  const double hi_n = std::pow(x.hi(), static_cast<double>(n));
  const bool even = n % 2 == 0;
  if (x.lo() >= 0.0 || !even) return Interval(lo_n, hi_n);
  if (x.hi() <= 0.0) return Interval(hi_n, lo_n);
  return Interval(0.0, std::max(lo_n, hi_n));
}

inline Interval operator+(const Interval& x, const Interval& y) {
  return add(x, y);
}
inline Interval operator-(const Interval& x, const Interval& y) {
  return sub(x, y, SubtractionMode::Moore);
}
inline Interval operator*(const Interval& x, const Interval& y) {
  return mul(x, y);
}
inline Interval operator*(double lambda, const Interval& x) {
  return scale(lambda, x);
}
inline Interval operator/(const Interval& y, const Interval& x) {
  return div(y, x);
}

/// Clamps both endpoints into [lo, hi].
inline Interval clamp(const Interval& x, double lo, double hi) {
  return Interval(std::clamp(x.lo(), lo, hi), std::clamp(x.hi(), lo, hi));
}

// ---------------------------------------------------------------------------
// Order relations for maximization.

enum class Verdict { Greater, Less, EqualOrIncomparable };

enum class ComparePolicy {
  Optimistic,   ///< larger upper endpoint wins
  Pessimistic,  ///< center/radius rule
  Combined,     ///< pessimistic first, optimistic when that is undecided
};

struct IntervalOrdering {
  Verdict verdict = Verdict::EqualOrIncomparable;
  ComparePolicy policy = ComparePolicy::Combined;

  bool greater() const noexcept { return verdict == Verdict::Greater; }
  bool less() const noexcept { return verdict == Verdict::Less; }
};

namespace detail {

inline Verdict optimistic(const Interval& x, const Interval& y) {
  if (x.hi() > y.hi()) return Verdict::Greater;
  if (x.hi() < y.hi()) return Verdict::Less;
  // Equal upper endpoints: the lower endpoint decides, keeping the relation
  // anti-symmetric.
  if (x.lo() > y.lo()) return Verdict::Greater;
  if (x.lo() < y.lo()) return Verdict::Less;
  return Verdict::EqualOrIncomparable;
}

inline bool nested(const Interval& x, const Interval& y) {
  return x.contains(y) || y.contains(x);
}

// x strictly better than y from the pessimistic standpoint.
inline bool pessimistic_wins(const Interval& x, const Interval& y) {
  if (x == y) return false;
  if (nested(x, y)) {
    return x.center() >= y.center() && x.radius() < y.radius();
  }
  return x.center() > y.center();
}

inline Verdict pessimistic(const Interval& x, const Interval& y) {
  if (pessimistic_wins(x, y)) return Verdict::Greater;
  if (pessimistic_wins(y, x)) return Verdict::Less;
  return Verdict::EqualOrIncomparable;
}

}  // namespace detail

inline IntervalOrdering compare_max(const Interval& x, const Interval& y,
                                    ComparePolicy policy) {
  Verdict v = Verdict::EqualOrIncomparable;
  switch (policy) {
    case ComparePolicy::Optimistic:
      v = detail::optimistic(x, y);
      break;
    case ComparePolicy::Pessimistic:
      v = detail::pessimistic(x, y);
      break;
    case ComparePolicy::Combined:
      v = detail::pessimistic(x, y);
      if (v == Verdict::EqualOrIncomparable) v = detail::optimistic(x, y);
      break;
  }
  return {v, policy};
}

/// Convenience: x strictly beats y under `policy`.
inline bool better(const Interval& x, const Interval& y,
                   ComparePolicy policy) {
  return compare_max(x, y, policy).greater();
}

inline const char* to_string(ComparePolicy p) {
  switch (p) {
    case ComparePolicy::Optimistic: return "optimistic";
    case ComparePolicy::Pessimistic: return "pessimistic";
    case ComparePolicy::Combined: return "combined";
  }
  return "combined";
}

}  // namespace oicrel
