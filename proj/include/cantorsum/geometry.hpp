#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cantorsum/ifs.hpp"
#include "cantorsum/interval_union.hpp"

namespace cantorsum {

enum class RegionTag { cantor_zone, region_R, interval_zone };

const char* to_string(RegionTag tag);

struct RegionVerdict {
  RegionTag tag = RegionTag::region_R;
  double dim_sum = 0.0;
  double thickness_product = 0.0;
};

/// Strict product criterion tau1 * tau2 > 1.
bool gap_lemma_predicate(double tau1, double tau2);

/// Classify a pair of middle-alpha ratios by the two closed-form criteria:
/// dimension sum below one forces a Cantor sumset, thickness product above
/// one forces an interval, anything else is the undecided region.
RegionVerdict middle_alpha_classify(double a, double b);

/// Either a generation-cover source (an IFS) or a fixed finite union standing
/// in for a compact set.
class CoverSource {
 public:
  explicit CoverSource(Ifs ifs) : source_(std::move(ifs)) {}
  explicit CoverSource(IntervalUnion fixed) : source_(std::move(fixed)) {}

  IntervalUnion cover(uint32_t depth, uint64_t cap = kDefaultWordCap) const;
  bool is_ifs() const { return std::holds_alternative<Ifs>(source_); }
  const Ifs& ifs() const { return std::get<Ifs>(source_); }

 private:
  std::variant<Ifs, IntervalUnion> source_;
};

struct SumCoverRow {
  uint32_t depth = 0;
  uint64_t interval_count = 0;
  double measure = 0.0;
  std::string hint;
};

struct SumCoverAnalysis {
  std::vector<SumCoverRow> rows;
  std::string verdict;        // hint at the deepest level
  double fitted_ratio = 0.0;  // geometric decay over the last four depths; NaN when < 4 depths
};

/// Measure sequence of minkowski_sum(cover_left(k), cover_right(k)) for
/// k = 1..max_depth, with a decay/interval/plateau hint per prefix.
SumCoverAnalysis sum_cover_analysis(const CoverSource& left, const CoverSource& right,
                                    uint32_t max_depth, uint64_t word_cap = kDefaultWordCap,
                                    uint64_t pair_cap = kDefaultPairCap);

}  // namespace cantorsum
