#include "cantorsum/interval_union.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cantorsum/errors.hpp"

namespace cantorsum {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> ivs, double merge_gap) {
  for (const Interval& iv : ivs) {
    if (!(iv.lo <= iv.hi)) {
      raise(Errc::config, "interval with lo > hi: [" + format_double(iv.lo) + ", " +
                              format_double(iv.hi) + "]");
    }
  }
  std::sort(ivs.begin(), ivs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  IntervalUnion out;
  double tol = std::max(0.0, merge_gap);
  for (const Interval& iv : ivs) {
    if (!out.ivs_.empty() && iv.lo - out.ivs_.back().hi <= tol) {
      out.ivs_.back().hi = std::max(out.ivs_.back().hi, iv.hi);
    } else {
      out.ivs_.push_back(iv);
    }
  }
  return out;
}

IntervalUnion IntervalUnion::single(double lo, double hi) {
  return from_intervals({Interval{lo, hi}});
}

double IntervalUnion::measure() const {
  double sum = 0.0;
  for (const Interval& iv : ivs_) sum += iv.length();
  return sum;
}

Interval IntervalUnion::hull() const {
  if (ivs_.empty()) raise(Errc::config, "hull of empty union");
  return Interval{ivs_.front().lo, ivs_.back().hi};
}

std::vector<Interval> IntervalUnion::gaps() const {
  std::vector<Interval> out;
  for (size_t i = 0; i + 1 < ivs_.size(); ++i) {
    out.push_back(Interval{ivs_[i].hi, ivs_[i + 1].lo});
  }
  return out;
}

bool IntervalUnion::contains(const IntervalUnion& other, double tol) const {
  for (const Interval& iv : other.ivs_) {
    // rightmost interval starting at or before iv.lo + tol
    auto it = std::upper_bound(ivs_.begin(), ivs_.end(), iv.lo + tol,
                               [](double x, const Interval& c) { return x < c.lo; });
    if (it == ivs_.begin()) return false;
    --it;
    if (iv.lo < it->lo - tol || iv.hi > it->hi + tol) return false;
  }
  return true;
}

std::string IntervalUnion::to_csv() const {
  std::string out;
  for (const Interval& iv : ivs_) {
    out += format_double(iv.lo);
    out += ',';
    out += format_double(iv.hi);
    out += '\n';
  }
  return out;
}

IntervalUnion IntervalUnion::from_csv(const std::string& text) {
  std::vector<Interval> ivs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) raise(Errc::config, "interval CSV line missing comma: " + line);
    ivs.push_back(Interval{std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return from_intervals(std::move(ivs));
}

IntervalUnion minkowski_sum(const IntervalUnion& a, const IntervalUnion& b, uint64_t pair_cap) {
  if (a.empty() || b.empty()) raise(Errc::config, "minkowski_sum of empty union");
  uint64_t pairs = static_cast<uint64_t>(a.size()) * static_cast<uint64_t>(b.size());
  if (a.size() != 0 && pairs / a.size() != b.size()) {
    raise(Errc::cap_exceeded, "pair count overflow in minkowski_sum");
  }
  if (pairs > pair_cap) {
    raise(Errc::cap_exceeded, "minkowski_sum pair count " + std::to_string(pairs) +
                                  " exceeds cap " + std::to_string(pair_cap) +
                                  "; reduce the cover depth");
  }
  std::vector<Interval> sums;
  sums.reserve(pairs);
  for (const Interval& x : a.intervals()) {
    for (const Interval& y : b.intervals()) {
      sums.push_back(Interval{x.lo + y.lo, x.hi + y.hi});
    }
  }
  double hull_len = (a.hull().hi + b.hull().hi) - (a.hull().lo + b.hull().lo);
  return IntervalUnion::from_intervals(std::move(sums), 1e-12 * hull_len);
}

double thickness(const IntervalUnion& a) {
  if (a.empty()) raise(Errc::config, "thickness of empty union");
  if (a.size() == 1) return kThicknessInfinite;
  const std::vector<Interval> gs = a.gaps();
  const Interval hull = a.hull();
  double worst = kThicknessInfinite;
  for (size_t i = 0; i < gs.size(); ++i) {
    const double glen = gs[i].length();
    if (glen <= 0.0) continue;
    double left_edge = hull.lo;
    for (size_t j = i; j-- > 0;) {
      if (gs[j].length() > glen) {
        left_edge = gs[j].hi;
        break;
      }
    }
    double right_edge = hull.hi;
    for (size_t j = i + 1; j < gs.size(); ++j) {
      if (gs[j].length() > glen) {
        right_edge = gs[j].lo;
        break;
      }
    }
    const double bridge = std::min(gs[i].lo - left_edge, right_edge - gs[i].hi);
    worst = std::min(worst, bridge / glen);
  }
  return worst;
}

}  // namespace cantorsum
