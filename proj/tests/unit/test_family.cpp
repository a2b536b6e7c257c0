#include <doctest.h>

#include <cmath>

#include "cantorsum/errors.hpp"
#include "cantorsum/family.hpp"

using namespace cantorsum;

namespace {

// c(lambda) = 0.5 - lambda, offsets 0 and 0.5 + lambda
CantorFamily shrinking_family(Interval J = {0.05, 0.1}) {
  return homogeneous_two_map_family(0.5, -1.0, CoefFn(0.0), CoefFn::linear(0.5, 1.0), J, 1.0);
}

// c(lambda) = lambda, offsets 0 and 1 - lambda
CantorFamily growing_family(Interval J = {0.2, 0.4}) {
  return homogeneous_two_map_family(0.0, 1.0, CoefFn(0.0), CoefFn::linear(1.0, -1.0), J, 0.5);
}

}  // namespace

TEST_SUITE("family") {
  TEST_CASE("instantiation at a parameter") {
    CantorFamily fam = shrinking_family();
    Ifs ifs = fam.at(0.1);
    CHECK(ifs.map(0).affine_part().c == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(ifs.map(0).affine_part().b == 0.0);
    CHECK(ifs.map(1).affine_part().c == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(ifs.map(1).affine_part().b == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(fam.at(0.2), Error);  // outside J
    try {
      fam.at(0.2);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::out_of_domain);
    }
  }

  TEST_CASE("separation violations at instantiation") {
    // offsets too close: images [0, c] and [0.4, 0.4 + c] overlap once c > 0.4
    CantorFamily fam = homogeneous_two_map_family(0.5, -1.0, CoefFn(0.0), CoefFn(0.4),
                                                  Interval{0.01, 0.3}, 1.0);
    CHECK_THROWS_AS(fam.at(0.05), Error);
    try {
      fam.at(0.05);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::separation_violated);
    }
    CHECK_NOTHROW(fam.at(0.2));  // c = 0.3, images [0, 0.3] and [0.4, 0.7]
  }

  TEST_CASE("the left endpoint of J carries the largest ratios") {
    CantorFamily fam = shrinking_family();
    double left = std::abs(fam.at(fam.domain().lo).map(0).affine_part().c);
    for (double lambda : {0.06, 0.08, 0.1}) {
      CHECK(left > std::abs(fam.at(lambda).map(0).affine_part().c));
    }
  }

  TEST_CASE("monotonicity of |c|") {
    CHECK(monotonicity_check(shrinking_family(), 33));
    CantorFamily increasing = growing_family();
    CHECK_FALSE(monotonicity_check(increasing, 33));

    // c(lambda) = 0.5 exp(-lambda) on [0, 0.2]: slopes in [-0.5, -0.409]
    CantorFamily expfam(
        {FamilyMap{CoefFn({CoefTerm{0.5, 0, -1.0}}), CoefFn(0.0), std::nullopt},
         FamilyMap{CoefFn({CoefTerm{0.5, 0, -1.0}}), CoefFn(0.5), std::nullopt}},
        Interval{0.0, 0.2}, 0.40);
    CHECK(monotonicity_check(expfam, 33));
    CantorFamily expfam_tight(
        {FamilyMap{CoefFn({CoefTerm{0.5, 0, -1.0}}), CoefFn(0.0), std::nullopt},
         FamilyMap{CoefFn({CoefTerm{0.5, 0, -1.0}}), CoefFn(0.5), std::nullopt}},
        Interval{0.0, 0.2}, 0.42);
    CHECK_FALSE(monotonicity_check(expfam_tight, 33));
  }

  TEST_CASE("derivative consistency") {
    CHECK(shrinking_family().derivative_consistency());
    CHECK(growing_family().derivative_consistency());
  }

  TEST_CASE("coding eval on the growing family") {
    CantorFamily fam = growing_family();
    SymbolPath ones{Word({1}, 2)};
    SymbolPath zeros{Word({0}, 2)};
    SymbolPath one_then_zeros(Word({1}, 2), Word({0}, 2));
    for (double lambda : {0.2, 0.3, 0.4}) {
      CHECK(coding_eval(fam, lambda, ones).x == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(coding_eval(fam, lambda, zeros).x == 0.0);
      CodingEval e = coding_eval(fam, lambda, one_then_zeros);
      CHECK(e.x == doctest::Approx(1.0 - lambda).epsilon(1e-15));
      CHECK(e.dx_dlambda == doctest::Approx(-1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("coding eval matches the truncated series") {
    // Pi(omega) = sum_k b_{omega_k}(lambda) * lambda^k for c(lambda) = lambda
    CantorFamily fam = growing_family();
    SymbolPath p(Word({1, 0, 1}, 2), Word({1, 1, 0}, 2));
    double lambda = 0.35;
    double series = 0.0;
    for (int k = 60; k >= 0; --k) {
      series = fam.b(p.at(static_cast<size_t>(k)), lambda) + lambda * series;
    }
    CHECK(coding_eval(fam, lambda, p).x == doctest::Approx(series).epsilon(1e-13));
  }

  TEST_CASE("orbit points follow the shift") {
    CantorFamily fam = shrinking_family();
    SymbolPath p(Word({0, 1, 1}, 2), Word({1, 0}, 2));
    double lambda = 0.07;
    std::vector<double> xs = orbit_points(fam, lambda, p, 6);
    REQUIRE(xs.size() == 7);
    for (uint32_t s = 0; s <= 6; ++s) {
      CHECK(xs[s] == doctest::Approx(coding_eval(fam, lambda, p.shift(s)).x).epsilon(1e-12));
    }
  }

  TEST_CASE("perturbed coding eval agrees with finite differences in lambda") {
    PerturbationField g({PerturbTerm{2e-3, 1, TrigKind::sin, 2.0 * M_PI, 0.0, 1}}, 0.12);
    CantorFamily fam({FamilyMap{CoefFn::linear(0.5, -1.0), CoefFn(0.0), g},
                      FamilyMap{CoefFn::linear(0.5, -1.0), CoefFn::linear(0.5, 1.0), g}},
                     Interval{0.05, 0.1}, 1.0);
    SymbolPath p(Word({1, 0}, 2), Word({0, 1, 1}, 2));
    double lambda = 0.075, h = 1e-6;
    CodingEval mid = coding_eval(fam, lambda, p);
    double fd =
        (coding_eval(fam, lambda + h, p).x - coding_eval(fam, lambda - h, p).x) / (2.0 * h);
    CHECK(mid.dx_dlambda == doctest::Approx(fd).epsilon(1e-6));

    // zero-amplitude perturbation reproduces the affine values
    PerturbationField g0({PerturbTerm{0.0, 1, TrigKind::sin, 2.0 * M_PI, 0.0, 1}}, 0.0);
    CantorFamily fam0({FamilyMap{CoefFn::linear(0.5, -1.0), CoefFn(0.0), g0},
                       FamilyMap{CoefFn::linear(0.5, -1.0), CoefFn::linear(0.5, 1.0), g0}},
                      Interval{0.05, 0.1}, 1.0);
    CantorFamily affine({FamilyMap{CoefFn::linear(0.5, -1.0), CoefFn(0.0), std::nullopt},
                         FamilyMap{CoefFn::linear(0.5, -1.0), CoefFn::linear(0.5, 1.0), std::nullopt}},
                        Interval{0.05, 0.1}, 1.0);
    CodingEval a = coding_eval(fam0, lambda, p);
    CodingEval b = coding_eval(affine, lambda, p);
    CHECK(a.x == doctest::Approx(b.x).epsilon(1e-12));
    CHECK(a.dx_dlambda == doctest::Approx(b.dx_dlambda).epsilon(1e-10));
  }
}
