#include <doctest.h>

#include <cmath>
#include <random>

#include "cantorsum/errors.hpp"
#include "cantorsum/interval_union.hpp"

using namespace cantorsum;

namespace {

IntervalUnion make(std::initializer_list<Interval> ivs) {
  return IntervalUnion::from_intervals(std::vector<Interval>(ivs));
}

}  // namespace

TEST_SUITE("interval_union") {
  TEST_CASE("canonicalization sorts and merges") {
    IntervalUnion u = make({{0.5, 0.7}, {0.0, 0.2}, {0.2, 0.3}});
    REQUIRE(u.size() == 2);
    CHECK(u.intervals()[0].lo == 0.0);
    CHECK(u.intervals()[0].hi == 0.3);  // touching intervals merge
    CHECK(u.intervals()[1].lo == 0.5);
    CHECK_THROWS_AS(make({{1.0, 0.0}}), Error);
  }

  TEST_CASE("measure") {
    CHECK(make({{0.0, 1.0 / 3}, {2.0 / 3, 1.0}}).measure() == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(IntervalUnion().measure() == 0.0);
  }

  TEST_CASE("minkowski sums") {
    IntervalUnion unit = make({{0.0, 1.0}});
    IntervalUnion s = minkowski_sum(unit, unit);
    REQUIRE(s.size() == 1);
    CHECK(s.intervals()[0].lo == 0.0);
    CHECK(s.intervals()[0].hi == 2.0);

    IntervalUnion point = make({{0.5, 0.5}});
    IntervalUnion t = minkowski_sum(point, make({{0.2, 0.4}}));
    REQUIRE(t.size() == 1);
    CHECK(t.intervals()[0].lo == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(t.intervals()[0].hi == doctest::Approx(0.9).epsilon(1e-15));

    IntervalUnion ends = make({{0.0, 0.1}, {0.9, 1.0}});
    IntervalUnion sum = minkowski_sum(ends, ends);
    REQUIRE(sum.size() == 3);
    CHECK(sum.intervals()[0].lo == doctest::Approx(0.0));
    CHECK(sum.intervals()[0].hi == doctest::Approx(0.2));
    CHECK(sum.intervals()[1].lo == doctest::Approx(0.9));
    CHECK(sum.intervals()[1].hi == doctest::Approx(1.1));
    CHECK(sum.intervals()[2].lo == doctest::Approx(1.8));
    CHECK(sum.intervals()[2].hi == doctest::Approx(2.0));
  }

  TEST_CASE("minkowski pair cap") {
    std::vector<Interval> many;
    for (int i = 0; i < 100; ++i) many.push_back({i * 1.0, i * 1.0 + 0.25});
    IntervalUnion u = IntervalUnion::from_intervals(many);
    CHECK_THROWS_AS(minkowski_sum(u, u, 9999), Error);
    CHECK_NOTHROW(minkowski_sum(u, u, 10000));
  }

  TEST_CASE("minkowski commutes and respects hulls on random rational fixtures") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pos(0, 63), len(1, 8), cnt(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
      auto gen = [&]() {
        std::vector<Interval> ivs;
        int k = cnt(rng);
        for (int i = 0; i < k; ++i) {
          double lo = pos(rng) / 64.0;
          ivs.push_back({lo, lo + len(rng) / 64.0});
        }
        return IntervalUnion::from_intervals(std::move(ivs));
      };
      IntervalUnion a = gen(), b = gen(), c = gen();
      IntervalUnion ab = minkowski_sum(a, b), ba = minkowski_sum(b, a);
      REQUIRE(ab.size() == ba.size());
      for (size_t i = 0; i < ab.size(); ++i) {
        CHECK(ab.intervals()[i].lo == ba.intervals()[i].lo);
        CHECK(ab.intervals()[i].hi == ba.intervals()[i].hi);
      }
      CHECK(ab.hull().lo == doctest::Approx(a.hull().lo + b.hull().lo).epsilon(1e-15));
      CHECK(ab.hull().hi == doctest::Approx(a.hull().hi + b.hull().hi).epsilon(1e-15));
      CHECK(ab.measure() >= a.measure() - 1e-12);
      CHECK(ab.measure() >= b.measure() - 1e-12);

      // associativity, exact on the 1/64 lattice
      IntervalUnion abc1 = minkowski_sum(ab, c);
      IntervalUnion abc2 = minkowski_sum(a, minkowski_sum(b, c));
      REQUIRE(abc1.size() == abc2.size());
      for (size_t i = 0; i < abc1.size(); ++i) {
        CHECK(abc1.intervals()[i].lo == doctest::Approx(abc2.intervals()[i].lo).epsilon(1e-14));
        CHECK(abc1.intervals()[i].hi == doctest::Approx(abc2.intervals()[i].hi).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("thickness of two-interval unions") {
    // middle-alpha first generation, a = 0.4: bridges 0.4 around a 0.2 gap
    CHECK(thickness(make({{0.0, 0.4}, {0.6, 1.0}})) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(thickness(make({{0.0, 1.0 / 3}, {2.0 / 3, 1.0}})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(thickness(make({{0.0, 1.0}})) == kThicknessInfinite);
  }

  TEST_CASE("thickness bridges stop at strictly larger gaps") {
    // gaps: 0.1 (bridges 0.2 / 0.2), 0.3 between; outer structure
    IntervalUnion u = make({{0.0, 0.2}, {0.3, 0.5}, {0.8, 1.0}});
    // gap1 = (0.2,0.3) size 0.1: left bridge 0.2, right bridge 0.2 (stops at the 0.3 gap)
    // gap2 = (0.5,0.8) size 0.3: bridges 0.5 and 0.2
    CHECK(thickness(u) == doctest::Approx(std::min(0.2 / 0.1, 0.2 / 0.3)).epsilon(1e-12));
  }

  TEST_CASE("contains") {
    IntervalUnion big = make({{0.0, 0.4}, {0.6, 1.0}});
    CHECK(big.contains(make({{0.1, 0.2}, {0.7, 0.9}})));
    CHECK_FALSE(big.contains(make({{0.3, 0.7}})));
  }

  TEST_CASE("csv round trip") {
    IntervalUnion u = make({{0.0, 1.0 / 3}, {2.0 / 3, 1.0}});
    IntervalUnion v = IntervalUnion::from_csv(u.to_csv());
    REQUIRE(v.size() == u.size());
    for (size_t i = 0; i < u.size(); ++i) {
      CHECK(v.intervals()[i].lo == u.intervals()[i].lo);
      CHECK(v.intervals()[i].hi == u.intervals()[i].hi);
    }
  }
}
