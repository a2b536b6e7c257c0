#pragma once

#include <optional>
#include <vector>

#include "cantorsum/expressions.hpp"
#include "cantorsum/interval_union.hpp"
#include "cantorsum/words.hpp"

namespace cantorsum {

inline constexpr double kSeparationTol = 1e-12;

struct AffineMap {
  double c = 0.0;  // signed contraction ratio
  double b = 0.0;  // offset
  double operator()(double x) const { return c * x + b; }
};

/// One contraction of [0,1]: affine part plus an optional perturbation frozen
/// at a fixed parameter value.
class IfsMap {
 public:
  explicit IfsMap(AffineMap aff);
  IfsMap(AffineMap aff, PerturbationField g, double lambda);

  double operator()(double x) const;
  double deriv(double x) const;
  /// Grid bound on |f'| over [0,1]; cached at construction.
  double sup_abs_deriv() const { return sup_abs_deriv_; }
  double inf_abs_deriv() const { return inf_abs_deriv_; }

  bool affine() const { return !g_.has_value(); }
  const AffineMap& affine_part() const { return aff_; }
  const std::optional<PerturbationField>& perturbation() const { return g_; }
  double frozen_lambda() const { return lambda_; }

  /// Image of [0,1]; endpoint images, monotonicity checked at construction.
  Interval image() const;

 private:
  void scan_derivative();

  AffineMap aff_;
  std::optional<PerturbationField> g_;
  double lambda_ = 0.0;
  double sup_abs_deriv_ = 0.0;
  double inf_abs_deriv_ = 0.0;
};

struct SeparationReport {
  bool ok = false;
  std::vector<Interval> images;  // sorted by left endpoint
  std::vector<double> gap_sizes;
  int bad_first = -1;  // offending pair (indices into the sorted images)
  int bad_second = -1;
  double min_gap = 0.0;
};

/// Finite system of contractions of [0,1]. Construction checks contraction
/// and range; strong separation is queried via validate_separation.
class Ifs {
 public:
  explicit Ifs(std::vector<IfsMap> maps);

  size_t size() const { return maps_.size(); }
  const IfsMap& map(size_t i) const { return maps_[i]; }
  const std::vector<IfsMap>& maps() const { return maps_; }
  std::vector<double> ratios() const;
  bool affine() const;

 private:
  std::vector<IfsMap> maps_;
};

SeparationReport validate_separation(const Ifs& ifs, double tol = kSeparationTol);

/// Union of the m^n images of [0,1] over all words of length n.
IntervalUnion generation_cover(const Ifs& ifs, uint32_t n, uint64_t cap = kDefaultWordCap);

/// Image of [0,1] under the composition along the word (first symbol is the
/// outermost map).
Interval cylinder_interval(const Ifs& ifs, const Word& w);

struct CodingResult {
  double x = 0.0;
  double error_bound = 0.0;
};

/// Truncated coding-map value. Exact (error 0) for affine systems via the
/// fixed point of the periodic tail; otherwise the depth-fold composition at
/// x = 0 with the cylinder-length error bound.
CodingResult coding_point(const Ifs& ifs, const SymbolPath& path, uint32_t depth);

/// Two affine maps of ratio a at the two ends of [0,1].
Ifs middle_alpha_ifs(double a);

}  // namespace cantorsum
