#include "cantorsum/geometry.hpp"

#include <cmath>

#include "cantorsum/errors.hpp"

namespace cantorsum {

const char* to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::cantor_zone:
      return "cantor_zone";
    case RegionTag::region_R:
      return "region_R";
    case RegionTag::interval_zone:
      return "interval_zone";
  }
  return "region_R";
}

bool gap_lemma_predicate(double tau1, double tau2) {
  if (!(tau1 > 0.0) || !(tau2 > 0.0)) raise(Errc::config, "thickness values must be positive");
  return tau1 * tau2 > 1.0;
}

RegionVerdict middle_alpha_classify(double a, double b) {
  if (!(a > 0.0 && a < 0.5 && b > 0.0 && b < 0.5)) {
    raise(Errc::config, "middle-alpha ratios must lie in (0, 1/2)");
  }
  RegionVerdict v;
  v.dim_sum = std::log(2.0) / std::log(1.0 / a) + std::log(2.0) / std::log(1.0 / b);
  v.thickness_product = (a / (1.0 - 2.0 * a)) * (b / (1.0 - 2.0 * b));
  if (v.dim_sum < 1.0) {
    v.tag = RegionTag::cantor_zone;
  } else if (v.thickness_product > 1.0) {
    v.tag = RegionTag::interval_zone;
  } else {
    v.tag = RegionTag::region_R;
  }
  return v;
}

IntervalUnion CoverSource::cover(uint32_t depth, uint64_t cap) const {
  if (const Ifs* ifs = std::get_if<Ifs>(&source_)) {
    return generation_cover(*ifs, depth, cap);
  }
  return std::get<IntervalUnion>(source_);
}

namespace {

// Geometric decay ratio fitted to the last `window` measures by least squares
// on the logs.
double fit_decay_ratio(const std::vector<SumCoverRow>& rows, size_t window) {
  if (rows.size() < window) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = rows.size() - window; i < rows.size(); ++i) {
    double x = static_cast<double>(rows[i].depth);
    double y = std::log(std::max(rows[i].measure, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(window);
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::exp(slope);
}

std::string classify_prefix(bool all_single, double fitted_ratio) {
  if (all_single) return "interval";
  if (!std::isnan(fitted_ratio) && fitted_ratio < 0.95) return "shrinking-to-zero";
  return "plateau";
}

}  // namespace

SumCoverAnalysis sum_cover_analysis(const CoverSource& left, const CoverSource& right,
                                    uint32_t max_depth, uint64_t word_cap, uint64_t pair_cap) {
  if (max_depth < 1) raise(Errc::config, "sum analysis needs depth >= 1");
  SumCoverAnalysis out;
  bool all_single = true;
  for (uint32_t k = 1; k <= max_depth; ++k) {
    IntervalUnion sum = minkowski_sum(left.cover(k, word_cap), right.cover(k, word_cap), pair_cap);
    SumCoverRow row;
    row.depth = k;
    row.interval_count = sum.size();
    row.measure = sum.measure();
    all_single = all_single && sum.size() == 1;
    out.rows.push_back(row);
    double ratio = fit_decay_ratio(out.rows, 4);
    out.rows.back().hint = classify_prefix(all_single, ratio);
    out.fitted_ratio = ratio;
  }
  out.verdict = out.rows.back().hint;
  return out;
}

}  // namespace cantorsum
