#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cantorsum/ifs.hpp"
#include "cantorsum/interval_union.hpp"
#include "cantorsum/words.hpp"

namespace cantorsum {

/// Probability vector over the alphabet; cylinder masses are products of
/// symbol weights.
class BernoulliWeights {
 public:
  explicit BernoulliWeights(std::vector<double> p);

  size_t size() const { return p_.size(); }
  double operator[](size_t i) const { return p_[i]; }
  const std::vector<double>& probabilities() const { return p_; }
  double cylinder_mass(const Word& w) const;

 private:
  std::vector<double> p_;
};

/// Discretized measure on the line: mass per bin of uniform width.
struct MeasureHistogram {
  double bin_width = 0.0;
  double origin = 0.0;
  std::vector<double> weights;

  double mass() const;
  size_t size() const { return weights.size(); }
  Interval support_hull() const;
  double bin_center(size_t i) const { return origin + (static_cast<double>(i) + 0.5) * bin_width; }
  /// Mass of the closed ball of radius r around x, bins counted fractionally.
  double ball_mass(double x, double r) const;
  std::string to_csv() const;  // "bin_index,mass" lines, nonzero bins
};

struct FrostmanSample {
  double x = 0.0;
  double r = 0.0;
};

struct FrostmanCertificate {
  double d = 0.0;
  double C = 0.0;
  double worst_ratio = 0.0;
  double worst_x = 0.0;
  double worst_r = 0.0;
  size_t samples = 0;
  bool pass = false;
};

/// Unique s in (0, 1] with sum |c_i|^s = 1, bisection to 1e-12, closed form
/// for equal ratios. Throws Errc::no_root when the ratios sum above one.
double moran_dimension(const std::vector<double>& ratios);

/// Weights |c_i|^s at the Moran exponent, normalized.
BernoulliWeights equilibrium_weights(const std::vector<double>& ratios);

/// Shannon entropy in nats.
double entropy(const BernoulliWeights& w);

struct OrbitSpec {
  int orbits = 64;
  int depth = 256;
  int burn_in = 32;
  uint64_t seed = 0;
};

struct LyapunovEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Affine systems: exact -sum p_i log|c_i|. Otherwise a Birkhoff average of
/// -log|f'| over weighted random orbits with a standard error.
LyapunovEstimate lyapunov_exponent(const Ifs& ifs, const BernoulliWeights& w,
                                   const OrbitSpec& spec = {});

struct BoxFitPoint {
  uint32_t depth = 0;
  double mesh = 0.0;
  double count = 0.0;
};

struct BoxFit {
  double dimension = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  std::vector<BoxFitPoint> points;
};

/// Least-squares slope of log(count) against log(1/mesh) over the supplied
/// generation depths. Throws Errc::degenerate_fit when the mesh fails to
/// decrease.
BoxFit box_dimension_estimate(const std::function<IntervalUnion(uint32_t)>& covers,
                              uint32_t depth_lo, uint32_t depth_hi);
BoxFit box_dimension_fit(const std::vector<BoxFitPoint>& points);

FrostmanCertificate frostman_check(const MeasureHistogram& h, double d, double C,
                                   const std::vector<FrostmanSample>& samples);

/// Ball centers on nonzero bins, radii geometric from 2*bin_width up to the
/// support diameter.
std::vector<FrostmanSample> frostman_default_samples(const MeasureHistogram& h, int n_radii = 12,
                                                     int max_centers = 512);

/// Depth-n cylinder masses binned at cylinder midpoints. Throws
/// Errc::resolution_mismatch when a cylinder is longer than a bin.
MeasureHistogram pushforward_histogram(const Ifs& ifs, const BernoulliWeights& w, uint32_t depth,
                                       double bin_width, uint64_t cap = kDefaultWordCap);

struct ConvolutionResult {
  MeasureHistogram hist;
  double l2_norm = 0.0;  // L2 norm of the step density masses/bin_width
};

ConvolutionResult convolution_density(const MeasureHistogram& a, const MeasureHistogram& b);

MeasureHistogram uniform_histogram(double lo, double hi, double bin_width);

}  // namespace cantorsum
