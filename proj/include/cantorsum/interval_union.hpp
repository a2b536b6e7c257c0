#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace cantorsum {

inline constexpr uint64_t kDefaultPairCap = uint64_t{1} << 28;
inline constexpr double kThicknessInfinite = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Sorted union of pairwise disjoint closed intervals. The canonical finite
/// representation of generation covers, sumsets and gap structures.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  /// Sorts and merges. Intervals whose gap is <= merge_gap (and always
  /// touching or overlapping ones) are coalesced.
  static IntervalUnion from_intervals(std::vector<Interval> ivs, double merge_gap = 0.0);
  static IntervalUnion single(double lo, double hi);

  const std::vector<Interval>& intervals() const { return ivs_; }
  size_t size() const { return ivs_.size(); }
  bool empty() const { return ivs_.empty(); }

  double measure() const;
  Interval hull() const;  // pre: nonempty
  /// Bounded gaps between consecutive intervals, left to right.
  std::vector<Interval> gaps() const;
  /// True when every interval of other lies inside some interval of *this
  /// (endpoints allowed to stick out by tol).
  bool contains(const IntervalUnion& other, double tol = 0.0) const;

  /// CSV serialization: one "l,r" line per interval, ascending.
  std::string to_csv() const;
  static IntervalUnion from_csv(const std::string& text);

 private:
  std::vector<Interval> ivs_;
};

/// {a + b : a in A, b in B}. Enumerates |A|*|B| interval sums then merges;
/// throws Errc::cap_exceeded past pair_cap.
IntervalUnion minkowski_sum(const IntervalUnion& a, const IntervalUnion& b,
                            uint64_t pair_cap = kDefaultPairCap);

/// Newhouse thickness of the finite gap structure: for every bounded gap,
/// the bridge on each side runs to the nearest strictly larger gap or to the
/// hull boundary; the ratio is min(bridge)/gap and the thickness is the
/// minimum ratio. A single interval has infinite thickness.
double thickness(const IntervalUnion& a);

}  // namespace cantorsum
