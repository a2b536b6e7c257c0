#include <doctest.h>

#include <cmath>
#include <random>

#include "cantorsum/errors.hpp"
#include "cantorsum/measures.hpp"

using namespace cantorsum;

TEST_SUITE("measures") {
  TEST_CASE("moran dimension closed forms and bisection") {
    CHECK(moran_dimension({1.0 / 3, 1.0 / 3}) ==
          doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
    CHECK(moran_dimension({0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    // x + x^2 = 1 at x = (sqrt 5 - 1)/2, s = log2((sqrt 5 + 1)/2)
    double golden_s = std::log((std::sqrt(5.0) + 1.0) / 2.0) / std::log(2.0);
    CHECK(moran_dimension({0.5, 0.25}) == doctest::Approx(golden_s).epsilon(1e-9));
    CHECK_THROWS_AS(moran_dimension({0.6, 0.7}), Error);
    CHECK_THROWS_AS(moran_dimension({1.2, 0.3}), Error);
  }

  TEST_CASE("moran root residual and monotonicity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    for (int trial = 0; trial < 30; ++trial) {
      size_t m = 2 + trial % 4;
      std::vector<double> r(m);
      double sum = 0.0;
      for (double& v : r) {
        v = u(rng);
        sum += v;
      }
      double scale = u(rng) / sum;  // total in (0.05, 0.9)
      for (double& v : r) v *= scale;
      double s = moran_dimension(r);
      double residual = -1.0;
      for (double v : r) residual += std::pow(v, s);
      CHECK(std::abs(residual) <= 1e-10);

      std::vector<double> bigger = r;
      bigger[0] = std::min(0.95, bigger[0] * 1.2);
      CHECK(moran_dimension(bigger) > s);
    }
  }

  TEST_CASE("equilibrium weights and entropy") {
    BernoulliWeights sym = equilibrium_weights({1.0 / 3, 1.0 / 3});
    CHECK(sym[0] == doctest::Approx(0.5).epsilon(1e-12));
    BernoulliWeights sym2 = equilibrium_weights({0.4, 0.4});
    CHECK(sym2[1] == doctest::Approx(0.5).epsilon(1e-12));

    double x = (std::sqrt(5.0) - 1.0) / 2.0;
    BernoulliWeights golden = equilibrium_weights({0.5, 0.25});
    CHECK(golden[0] == doctest::Approx(x).epsilon(1e-9));
    CHECK(golden[1] == doctest::Approx(x * x).epsilon(1e-9));

    CHECK(entropy(BernoulliWeights({0.5, 0.5})) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(entropy(BernoulliWeights({1.0, 0.0})) == 0.0);
    double golden_h = -(x * std::log(x) + x * x * std::log(x * x));
    CHECK(entropy(golden) == doctest::Approx(golden_h).epsilon(1e-9));
  }

  TEST_CASE("lyapunov exponents: affine exact values") {
    Ifs mt = middle_alpha_ifs(1.0 / 3);
    CHECK(lyapunov_exponent(mt, BernoulliWeights({0.5, 0.5})).value ==
          doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(lyapunov_exponent(mt, BernoulliWeights({0.9, 0.1})).value ==
          doctest::Approx(std::log(3.0)).epsilon(1e-12));

    std::vector<IfsMap> maps;
    maps.emplace_back(AffineMap{0.5, 0.0});
    maps.emplace_back(AffineMap{0.25, 0.75});
    Ifs sys(std::move(maps));
    double x = (std::sqrt(5.0) - 1.0) / 2.0;
    double expect = x * std::log(2.0) + x * x * std::log(4.0);
    LyapunovEstimate est = lyapunov_exponent(sys, equilibrium_weights({0.5, 0.25}));
    CHECK(est.value == doctest::Approx(expect).epsilon(1e-9));
    CHECK(est.std_error == 0.0);
  }

  TEST_CASE("dimension identity entropy/lyapunov = moran") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
      size_t m = 2 + trial % 3;
      std::vector<double> r(m);
      double sum = 0.0;
      for (double& v : r) {
        v = u(rng);
        sum += v;
      }
      double scale = 0.98 * u(rng) / sum;
      std::vector<IfsMap> maps;
      double offset = 0.0;
      for (double& v : r) {
        v *= scale;
        maps.emplace_back(AffineMap{v, offset});
        offset += v + 1e-3;
      }
      Ifs sys(std::move(maps));
      BernoulliWeights w = equilibrium_weights(r);
      double ratio = entropy(w) / lyapunov_exponent(sys, w).value;
      CHECK(ratio == doctest::Approx(moran_dimension(r)).epsilon(1e-9));
    }
  }

  TEST_CASE("birkhoff lyapunov for perturbed maps approaches the affine value") {
    PerturbationField g({PerturbTerm{1e-3, 1, TrigKind::sin, 2.0 * M_PI, 0.0, 0}}, 0.06);
    std::vector<IfsMap> maps;
    maps.emplace_back(AffineMap{0.42, 0.0}, g, 0.0);
    maps.emplace_back(AffineMap{0.42, 0.58}, g, 0.0);
    Ifs sys(std::move(maps));
    LyapunovEstimate est = lyapunov_exponent(sys, BernoulliWeights({0.5, 0.5}), OrbitSpec{});
    CHECK(est.value == doctest::Approx(std::log(1.0 / 0.42)).epsilon(0.02));
    CHECK(est.std_error < 0.02);
  }

  TEST_CASE("box dimension estimates") {
    Ifs mt = middle_alpha_ifs(1.0 / 3);
    BoxFit fit = box_dimension_estimate([&](uint32_t d) { return generation_cover(mt, d); }, 2, 8);
    CHECK(fit.dimension == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.016));

    // single shrinking interval: count stays 1
    BoxFit flat = box_dimension_estimate(
        [](uint32_t d) { return IntervalUnion::single(0.0, std::pow(0.5, d)); }, 1, 6);
    CHECK(flat.dimension == doctest::Approx(0.0).epsilon(1e-12));

    // full interval refined: counts double as mesh halves
    std::vector<BoxFitPoint> pts;
    for (uint32_t d = 1; d <= 6; ++d) {
      pts.push_back(BoxFitPoint{d, std::pow(0.5, d), std::pow(2.0, d)});
    }
    CHECK(box_dimension_fit(pts).dimension == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(box_dimension_estimate(
                        [](uint32_t) { return IntervalUnion::single(0.0, 1.0); }, 1, 5),
                    Error);
  }

  TEST_CASE("pushforward histograms") {
    Ifs mt = middle_alpha_ifs(1.0 / 3);
    MeasureHistogram h1 = pushforward_histogram(mt, BernoulliWeights({0.5, 0.5}), 1, 0.5);
    CHECK(h1.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h1.weights[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(h1.mass() == doctest::Approx(1.0).epsilon(1e-12));

    MeasureHistogram h10 = pushforward_histogram(mt, BernoulliWeights({0.5, 0.5}), 10, 0.01);
    CHECK(h10.mass() == doctest::Approx(1.0).epsilon(1e-9));
    // mass only inside cover bins
    IntervalUnion cover = generation_cover(mt, 10);
    for (size_t i = 0; i < h10.weights.size(); ++i) {
      if (h10.weights[i] == 0.0) continue;
      double c = h10.bin_center(i);
      bool hits = false;
      for (const Interval& iv : cover.intervals()) {
        if (c >= iv.lo - 0.01 && c <= iv.hi + 0.01) {
          hits = true;
          break;
        }
      }
      CHECK(hits);
    }

    MeasureHistogram degenerate = pushforward_histogram(mt, BernoulliWeights({1.0, 0.0}), 6, 0.01);
    CHECK(degenerate.weights[0] == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(pushforward_histogram(mt, BernoulliWeights({0.5, 0.5}), 1, 0.1), Error);
    try {
      pushforward_histogram(mt, BernoulliWeights({0.5, 0.5}), 1, 0.1);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::resolution_mismatch);
    }
  }

  TEST_CASE("frostman certificates on the middle-third equilibrium measure") {
    Ifs mt = middle_alpha_ifs(1.0 / 3);
    const double d = std::log(2.0) / std::log(3.0);
    MeasureHistogram h = pushforward_histogram(mt, BernoulliWeights({0.5, 0.5}), 10, 1.0 / 32768);
    std::vector<FrostmanSample> samples = frostman_default_samples(h);
    FrostmanCertificate good = frostman_check(h, d, 4.0, samples);
    CHECK(good.pass);
    CHECK(good.worst_ratio > 0.5);  // the bound is not vacuous

    // independent upper bound: cylinder masses against sample balls
    IntervalUnion cyl = generation_cover(mt, 10);
    double oracle_worst = 0.0;
    for (const FrostmanSample& s : samples) {
      double mass = 0.0;
      for (const Interval& iv : cyl.intervals()) {
        if (iv.hi >= s.x - s.r - h.bin_width && iv.lo <= s.x + s.r + h.bin_width) {
          mass += std::pow(0.5, 10);
        }
      }
      oracle_worst = std::max(oracle_worst, mass / std::pow(s.r, d));
    }
    CHECK(oracle_worst <= 4.0);
    CHECK(good.worst_ratio <= oracle_worst + 1e-9);

    FrostmanCertificate bad = frostman_check(h, 0.8, 4.0, samples);
    CHECK_FALSE(bad.pass);

    CHECK_THROWS_AS(frostman_check(h, d, 4.0, {FrostmanSample{0.5, h.bin_width}}), Error);
  }

  TEST_CASE("frostman pass is monotone in C") {
    MeasureHistogram u = uniform_histogram(0.0, 1.0, 1.0 / 256);
    std::vector<FrostmanSample> samples = frostman_default_samples(u);
    FrostmanCertificate c1 = frostman_check(u, 1.0, 2.01, samples);
    CHECK(c1.pass);
    CHECK(c1.worst_ratio <= 2.0 + 1e-9);
    FrostmanCertificate c2 = frostman_check(u, 1.0, c1.worst_ratio * 0.99, samples);
    CHECK_FALSE(c2.pass);
    FrostmanCertificate c3 = frostman_check(u, 1.0, c1.worst_ratio * 1.01, samples);
    CHECK(c3.pass);
  }

  TEST_CASE("convolution identities") {
    // point mass at the origin: convolution shifts by nothing
    MeasureHistogram delta{1.0 / 64, 0.0, std::vector<double>{1.0}};
    MeasureHistogram u = uniform_histogram(0.0, 1.0, 1.0 / 64);
    ConvolutionResult conv = convolution_density(delta, u);
    CHECK(conv.hist.mass() == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 0; i < u.weights.size(); ++i) {
      CHECK(conv.hist.weights[i] == doctest::Approx(u.weights[i]).epsilon(1e-12));
    }

    // uniform * uniform: triangle on [0,2] with peak 1
    ConvolutionResult tri = convolution_density(u, u);
    CHECK(tri.hist.mass() == doctest::Approx(1.0).epsilon(1e-12));
    double bw = tri.hist.bin_width;
    double sup_err = 0.0;
    for (size_t t = 0; t < tri.hist.weights.size(); ++t) {
      double center = tri.hist.bin_center(t);
      double truth = center <= 1.0 ? center : 2.0 - center;
      sup_err = std::max(sup_err, std::abs(tri.hist.weights[t] / bw - truth));
    }
    CHECK(sup_err < 2.0 * bw);

    MeasureHistogram other{1.0 / 32, 0.0, std::vector<double>{1.0}};
    CHECK_THROWS_AS(convolution_density(u, other), Error);
  }

  TEST_CASE("convolution mass and support hull") {
    Ifs sys = middle_alpha_ifs(0.45);
    BernoulliWeights w({0.5, 0.5});
    MeasureHistogram h = pushforward_histogram(sys, w, 8, 1.0 / 512);
    ConvolutionResult conv = convolution_density(h, h);
    CHECK(conv.hist.mass() == doctest::Approx(h.mass() * h.mass()).epsilon(1e-9));
    Interval hull = conv.hist.support_hull();
    Interval base = h.support_hull();
    CHECK(hull.lo == doctest::Approx(2.0 * base.lo).epsilon(0.01));
    CHECK(hull.hi == doctest::Approx(2.0 * base.hi).epsilon(0.01));
    CHECK(conv.l2_norm > 0.0);
  }
}
