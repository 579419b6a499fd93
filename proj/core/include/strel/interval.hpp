#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace strel {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Raised for malformed intervals and for indeterminate forms (inf + -inf).
// Either one means a bug upstream, so there is no recovery path.
class IntervalError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Closed interval [lo, hi] over the extended reals.
///
/// The default-constructed value is the full-unknown interval [-inf, +inf],
/// which every other interval refines. Equality is exact on both endpoints.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  constexpr Interval() = default;
  Interval(double lower, double upper) : lo(lower), hi(upper) {
    if (!(lower <= upper)) {
      throw IntervalError("invalid interval bounds");
    }
  }

  static constexpr Interval unknown() { return {}; }
  static Interval point(double v) { return {v, v}; }

  bool is_unknown() const { return lo == -kInf && hi == kInf; }
  bool is_point() const { return lo == hi; }
  bool contains(double v) const { return lo <= v && v <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval add_scalar(const Interval& i, double c);
Interval neg(const Interval& i);
Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);

inline Interval imax(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = a.lo < b.lo ? b.lo : a.lo;
  r.hi = a.hi < b.hi ? b.hi : a.hi;
  return r;
}

inline Interval imin(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = b.lo < a.lo ? b.lo : a.lo;
  r.hi = b.hi < a.hi ? b.hi : a.hi;
  return r;
}

// Set forms. Empty input is an error: callers pick the neutral element.
Interval imax_all(std::span<const Interval> xs);
Interval imin_all(std::span<const Interval> xs);

// Interval inequalities: a < b iff hi(a) < lo(b). Both may be false.
inline bool lt(const Interval& a, const Interval& b) { return a.hi < b.lo; }
inline bool gt(const Interval& a, const Interval& b) { return a.lo > b.hi; }

/// [min(|lo|,|hi|), max(|lo|,|hi|)]
Interval radius(const Interval& i);

/// max(|lo1 - lo2|, |hi1 - hi2|). An endpoint pair that is infinite on both
/// sides with the same sign contributes 0; finite against infinite is +inf.
double hausdorff(const Interval& a, const Interval& b);

/// fine is contained in coarse.
inline bool refines(const Interval& coarse, const Interval& fine) {
  return coarse.lo <= fine.lo && fine.hi <= coarse.hi;
}
inline bool strictly_refines(const Interval& coarse, const Interval& fine) {
  return refines(coarse, fine) && !(coarse == fine);
}

// Text rendering. Reals use the shortest round-trip form and "inf"/"-inf".
std::string format_real(double v);
double parse_real(std::string_view text);
std::string to_string(const Interval& i);
Interval parse_interval(std::string_view text);

} // namespace strel
