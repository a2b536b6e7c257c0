#include "cantorsum/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "cantorsum/errors.hpp"

namespace cantorsum {

BernoulliWeights::BernoulliWeights(std::vector<double> p) : p_(std::move(p)) {
  if (p_.size() < 2) raise(Errc::config, "weights need at least two entries");
  double sum = 0.0;
  for (double v : p_) {
    if (v < 0.0) raise(Errc::config, "weights must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    raise(Errc::config, "weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

double BernoulliWeights::cylinder_mass(const Word& w) const {
  double mass = 1.0;
  for (uint32_t s : w.symbols) mass *= p_[s];
  return mass;
}

double MeasureHistogram::mass() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

Interval MeasureHistogram::support_hull() const {
  size_t lo = weights.size(), hi = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  if (lo == weights.size()) raise(Errc::config, "histogram has no mass");
  return Interval{origin + lo * bin_width, origin + (hi + 1) * bin_width};
}

double MeasureHistogram::ball_mass(double x, double r) const {
  const double lo = x - r, hi = x + r;
  double total = 0.0;
  const auto first =
      static_cast<ptrdiff_t>(std::floor((lo - origin) / bin_width));
  const auto last = static_cast<ptrdiff_t>(std::floor((hi - origin) / bin_width));
  for (ptrdiff_t i = std::max<ptrdiff_t>(first, 0);
       i <= std::min<ptrdiff_t>(last, static_cast<ptrdiff_t>(weights.size()) - 1); ++i) {
    const double blo = origin + static_cast<double>(i) * bin_width;
    const double bhi = blo + bin_width;
    const double overlap = std::min(hi, bhi) - std::max(lo, blo);
    if (overlap > 0.0) total += weights[static_cast<size_t>(i)] * std::min(1.0, overlap / bin_width);
  }
  return total;
}

std::string MeasureHistogram::to_csv() const {
  std::string out;
  char buf[64];
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) continue;
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), weights[i]);
    out += std::to_string(i);
    out += ',';
    out.append(buf, end);
    out += '\n';
  }
  return out;
}

double moran_dimension(const std::vector<double>& ratios) {
  if (ratios.size() < 2) raise(Errc::config, "need at least two contraction ratios");
  for (double r : ratios) {
    if (!(r > 0.0 && r < 1.0)) raise(Errc::config, "ratios must lie in (0, 1)");
  }
  double sum = std::accumulate(ratios.begin(), ratios.end(), 0.0);
  if (sum > 1.0) {
    raise(Errc::no_root, "ratios sum to " + std::to_string(sum) +
                             " > 1; no similarity dimension in (0, 1]");
  }
  const double first = ratios.front();
  if (std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r == first; })) {
    return std::log(static_cast<double>(ratios.size())) / std::log(1.0 / first);
  }
  auto f = [&](double s) {
    double v = 0.0;
    for (double r : ratios) v += std::pow(r, s);
    return v - 1.0;
  };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BernoulliWeights equilibrium_weights(const std::vector<double>& ratios) {
  double s = moran_dimension(ratios);
  std::vector<double> p(ratios.size());
  double z = 0.0;
  for (size_t i = 0; i < ratios.size(); ++i) {
    p[i] = std::pow(ratios[i], s);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return BernoulliWeights(std::move(p));
}

double entropy(const BernoulliWeights& w) {
  double h = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) h -= w[i] * std::log(w[i]);
  }
  return h;
}

LyapunovEstimate lyapunov_exponent(const Ifs& ifs, const BernoulliWeights& w,
                                   const OrbitSpec& spec) {
  if (w.size() != ifs.size()) raise(Errc::config, "weights/ifs size mismatch");
  if (ifs.affine()) {
    double v = 0.0;
    for (size_t i = 0; i < ifs.size(); ++i) {
      v -= w[i] * std::log(std::abs(ifs.map(i).affine_part().c));
    }
    return LyapunovEstimate{v, 0.0};
  }
  std::mt19937_64 rng(spec.seed);
  std::discrete_distribution<size_t> pick(w.probabilities().begin(), w.probabilities().end());
  std::vector<size_t> word(spec.depth);
  double sum = 0.0, sumsq = 0.0;
  for (int o = 0; o < spec.orbits; ++o) {
    for (int i = 0; i < spec.depth; ++i) word[i] = pick(rng);
    // backward pass: x[s] approximates the coding point of the shifted word
    double x = 0.5;
    std::vector<double> xs(spec.depth);
    for (int s = spec.depth; s-- > 0;) {
      xs[s] = x = ifs.map(word[s])(x);
    }
    // the first burn_in positions from the inaccurate end are discarded
    double acc = 0.0;
    int used = 0;
    for (int s = 0; s + spec.burn_in < spec.depth; ++s) {
      acc -= std::log(std::abs(ifs.map(word[s]).deriv(s + 1 < spec.depth ? xs[s + 1] : 0.5)));
      ++used;
    }
    double avg = acc / used;
    sum += avg;
    sumsq += avg * avg;
  }
  double mean = sum / spec.orbits;
  double var = std::max(0.0, sumsq / spec.orbits - mean * mean);
  return LyapunovEstimate{mean, std::sqrt(var / spec.orbits)};
}

BoxFit box_dimension_fit(const std::vector<BoxFitPoint>& points) {
  if (points.size() < 3) raise(Errc::config, "box dimension fit needs >= 3 depths");
  for (size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].mesh < points[i - 1].mesh)) {
      raise(Errc::degenerate_fit, "mesh does not decrease between depths");
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const BoxFitPoint& pt : points) {
    double x = std::log(1.0 / pt.mesh);
    double y = std::log(pt.count);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(points.size());
  BoxFit fit;
  fit.dimension = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.dimension * sx) / n;
  for (const BoxFitPoint& pt : points) {
    double pred = fit.intercept + fit.dimension * std::log(1.0 / pt.mesh);
    fit.max_residual = std::max(fit.max_residual, std::abs(std::log(pt.count) - pred));
  }
  fit.points = points;
  return fit;
}

BoxFit box_dimension_estimate(const std::function<IntervalUnion(uint32_t)>& covers,
                              uint32_t depth_lo, uint32_t depth_hi) {
  if (depth_hi < depth_lo + 2) raise(Errc::config, "box dimension fit needs >= 3 depths");
  std::vector<BoxFitPoint> pts;
  for (uint32_t d = depth_lo; d <= depth_hi; ++d) {
    IntervalUnion u = covers(d);
    double mesh = 0.0;
    for (const Interval& iv : u.intervals()) mesh = std::max(mesh, iv.length());
    if (mesh <= 0.0) raise(Errc::degenerate_fit, "cover mesh is zero");
    pts.push_back(BoxFitPoint{d, mesh, static_cast<double>(u.size())});
  }
  return box_dimension_fit(pts);
}

FrostmanCertificate frostman_check(const MeasureHistogram& h, double d, double C,
                                   const std::vector<FrostmanSample>& samples) {
  if (!(d > 0.0)) raise(Errc::config, "frostman exponent must be positive");
  FrostmanCertificate cert;
  cert.d = d;
  cert.C = C;
  cert.samples = samples.size();
  for (const FrostmanSample& s : samples) {
    if (s.r < 2.0 * h.bin_width) {
      raise(Errc::resolution_too_coarse,
            "ball radius " + std::to_string(s.r) + " below twice the bin width " +
                std::to_string(h.bin_width));
    }
    double ratio = h.ball_mass(s.x, s.r) / std::pow(s.r, d);
    if (ratio > cert.worst_ratio) {
      cert.worst_ratio = ratio;
      cert.worst_x = s.x;
      cert.worst_r = s.r;
    }
  }
  cert.pass = cert.worst_ratio <= C;
  return cert;
}

std::vector<FrostmanSample> frostman_default_samples(const MeasureHistogram& h, int n_radii,
                                                     int max_centers) {
  Interval hull = h.support_hull();
  double r_lo = 2.0 * h.bin_width;
  double r_hi = std::max(hull.length(), r_lo);
  std::vector<double> centers;
  for (size_t i = 0; i < h.weights.size(); ++i) {
    if (h.weights[i] > 0.0) centers.push_back(h.bin_center(i));
  }
  size_t stride = std::max<size_t>(1, centers.size() / static_cast<size_t>(max_centers));
  std::vector<FrostmanSample> out;
  for (int k = 0; k < n_radii; ++k) {
    double t = n_radii == 1 ? 0.0 : static_cast<double>(k) / (n_radii - 1);
    double r = r_lo * std::pow(r_hi / r_lo, t);
    for (size_t i = 0; i < centers.size(); i += stride) {
      out.push_back(FrostmanSample{centers[i], r});
    }
  }
  return out;
}

MeasureHistogram pushforward_histogram(const Ifs& ifs, const BernoulliWeights& w, uint32_t depth,
                                       double bin_width, uint64_t cap) {
  if (!(bin_width > 0.0)) raise(Errc::config, "bin width must be positive");
  if (w.size() != ifs.size()) raise(Errc::config, "weights/ifs size mismatch");
  const uint32_t m = static_cast<uint32_t>(ifs.size());
  uint64_t count = checked_pow(m, depth, cap);
  MeasureHistogram h;
  h.bin_width = bin_width;
  h.origin = 0.0;
  h.weights.assign(static_cast<size_t>(std::ceil(1.0 / bin_width)) + 1, 0.0);
  std::vector<uint32_t> word(depth, 0);
  for (uint64_t k = 0; k < count; ++k) {
    double a = 0.0, b = 1.0, mass = 1.0;
    for (size_t i = depth; i-- > 0;) {
      const IfsMap& f = ifs.map(word[i]);
      a = f(a);
      b = f(b);
      mass *= w[word[i]];
    }
    if (std::abs(b - a) > bin_width) {
      raise(Errc::resolution_mismatch, "cylinder length " + std::to_string(std::abs(b - a)) +
                                           " exceeds bin width " + std::to_string(bin_width) +
                                           "; increase depth or bin width");
    }
    double mid = 0.5 * (a + b);
    auto idx = static_cast<size_t>(std::floor((mid - h.origin) / bin_width));
    if (idx >= h.weights.size()) idx = h.weights.size() - 1;
    h.weights[idx] += mass;
    for (size_t i = depth; i-- > 0;) {
      if (++word[i] < m) break;
      word[i] = 0;
    }
  }
  return h;
}

ConvolutionResult convolution_density(const MeasureHistogram& a, const MeasureHistogram& b) {
  if (std::abs(a.bin_width - b.bin_width) > 1e-12 * std::max(a.bin_width, b.bin_width)) {
    raise(Errc::bin_mismatch, "histograms have different bin widths");
  }
  ConvolutionResult out;
  out.hist.bin_width = a.bin_width;
  out.hist.origin = a.origin + b.origin;
  out.hist.weights.assign(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.weights[i] == 0.0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      out.hist.weights[i + j] += a.weights[i] * b.weights[j];
    }
  }
  double norm_sq = 0.0;
  for (double v : out.hist.weights) norm_sq += v * v;
  out.l2_norm = std::sqrt(norm_sq / out.hist.bin_width);
  return out;
}

MeasureHistogram uniform_histogram(double lo, double hi, double bin_width) {
  if (!(hi > lo) || !(bin_width > 0.0)) raise(Errc::config, "invalid uniform histogram spec");
  MeasureHistogram h;
  h.bin_width = bin_width;
  h.origin = lo;
  auto bins = static_cast<size_t>(std::round((hi - lo) / bin_width));
  if (bins == 0) bins = 1;
  h.weights.assign(bins, 1.0 / static_cast<double>(bins));
  return h;
}

}  // namespace cantorsum
