#include "cantorsum/ifs.hpp"

#include <algorithm>
#include <cmath>

#include "cantorsum/errors.hpp"

namespace cantorsum {

IfsMap::IfsMap(AffineMap aff) : aff_(aff) {
  sup_abs_deriv_ = inf_abs_deriv_ = std::abs(aff_.c);
  if (!(inf_abs_deriv_ > 0.0) || !(sup_abs_deriv_ < 1.0)) {
    raise(Errc::config, "affine ratio must satisfy 0 < |c| < 1");
  }
}

IfsMap::IfsMap(AffineMap aff, PerturbationField g, double lambda)
    : aff_(aff), g_(std::move(g)), lambda_(lambda) {
  scan_derivative();
}

void IfsMap::scan_derivative() {
  constexpr int kGrid = 512;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double sign = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    double d = deriv(static_cast<double>(i) / kGrid);
    if (d == 0.0 || (sign != 0.0 && std::signbit(d) != std::signbit(sign))) {
      raise(Errc::config, "perturbed map is not monotone on [0,1]");
    }
    sign = d;
    lo = std::min(lo, std::abs(d));
    hi = std::max(hi, std::abs(d));
  }
  inf_abs_deriv_ = lo;
  sup_abs_deriv_ = hi;
  if (!(hi < 1.0)) raise(Errc::config, "map is not a contraction on [0,1]");
}

double IfsMap::operator()(double x) const {
  double v = aff_(x);
  if (g_) v += g_->value(x, lambda_);
  return v;
}

double IfsMap::deriv(double x) const {
  double v = aff_.c;
  if (g_) v += g_->dx(x, lambda_);
  return v;
}

Interval IfsMap::image() const {
  double a = (*this)(0.0);
  double b = (*this)(1.0);
  return Interval{std::min(a, b), std::max(a, b)};
}

Ifs::Ifs(std::vector<IfsMap> maps) : maps_(std::move(maps)) {
  if (maps_.size() < 2) raise(Errc::config, "an IFS needs at least two maps");
  constexpr double kRangeTol = 1e-12;
  for (size_t i = 0; i < maps_.size(); ++i) {
    Interval im = maps_[i].image();
    if (im.lo < -kRangeTol || im.hi > 1.0 + kRangeTol) {
      raise(Errc::config, "map " + std::to_string(i) + " does not send [0,1] into [0,1]");
    }
  }
}

std::vector<double> Ifs::ratios() const {
  std::vector<double> r;
  r.reserve(maps_.size());
  for (const IfsMap& f : maps_) r.push_back(std::abs(f.affine_part().c));
  return r;
}

bool Ifs::affine() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const IfsMap& f) { return f.affine(); });
}

SeparationReport validate_separation(const Ifs& ifs, double tol) {
  SeparationReport rep;
  std::vector<std::pair<Interval, size_t>> images;
  for (size_t i = 0; i < ifs.size(); ++i) images.emplace_back(ifs.map(i).image(), i);
  std::sort(images.begin(), images.end(),
            [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  rep.ok = true;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < images.size(); ++i) {
    rep.images.push_back(images[i].first);
    if (i == 0) continue;
    double gap = images[i].first.lo - images[i - 1].first.hi;
    rep.gap_sizes.push_back(gap);
    rep.min_gap = std::min(rep.min_gap, gap);
    if (gap <= tol && rep.ok) {
      rep.ok = false;
      rep.bad_first = static_cast<int>(images[i - 1].second);
      rep.bad_second = static_cast<int>(images[i].second);
    }
  }
  return rep;
}

Interval cylinder_interval(const Ifs& ifs, const Word& w) {
  double a = 0.0;
  double b = 1.0;
  for (size_t i = w.size(); i-- > 0;) {
    const IfsMap& f = ifs.map(w[i]);
    a = f(a);
    b = f(b);
  }
  return Interval{std::min(a, b), std::max(a, b)};
}

IntervalUnion generation_cover(const Ifs& ifs, uint32_t n, uint64_t cap) {
  const uint32_t m = static_cast<uint32_t>(ifs.size());
  uint64_t count = checked_pow(m, n, cap);
  std::vector<Interval> ivs;
  ivs.reserve(count);
  std::vector<uint32_t> word(n, 0);
  for (uint64_t k = 0; k < count; ++k) {
    double a = 0.0, b = 1.0;
    for (size_t i = n; i-- > 0;) {
      const IfsMap& f = ifs.map(word[i]);
      a = f(a);
      b = f(b);
    }
    ivs.push_back(Interval{std::min(a, b), std::max(a, b)});
    for (size_t i = n; i-- > 0;) {
      if (++word[i] < m) break;
      word[i] = 0;
    }
  }
  return IntervalUnion::from_intervals(std::move(ivs));
}

CodingResult coding_point(const Ifs& ifs, const SymbolPath& path, uint32_t depth) {
  if (depth < 1) raise(Errc::config, "coding depth must be >= 1");
  if (ifs.affine()) {
    // slope/offset of the tail composition, then its fixed point
    double slope = 1.0, offset = 0.0;
    for (size_t i = path.tail.size(); i-- > 0;) {
      const AffineMap& f = ifs.map(path.tail[i]).affine_part();
      slope = f.c * slope;
      offset = f.c * offset + f.b;
    }
    double x = offset / (1.0 - slope);
    for (size_t i = path.prefix.size(); i-- > 0;) {
      x = ifs.map(path.prefix[i]).affine_part()(x);
    }
    return CodingResult{x, 0.0};
  }
  double x = 0.0;
  double bound = 1.0;
  for (size_t i = depth; i-- > 0;) {
    const IfsMap& f = ifs.map(path.at(i));
    x = f(x);
    bound *= f.sup_abs_deriv();
  }
  return CodingResult{x, bound};
}

Ifs middle_alpha_ifs(double a) {
  if (!(a > 0.0 && a < 0.5)) raise(Errc::config, "middle-alpha ratio must lie in (0, 1/2)");
  std::vector<IfsMap> maps;
  maps.emplace_back(AffineMap{a, 0.0});
  maps.emplace_back(AffineMap{a, 1.0 - a});
  return Ifs(std::move(maps));
}

}  // namespace cantorsum
