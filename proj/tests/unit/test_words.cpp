#include <doctest.h>

#include <random>

#include "cantorsum/errors.hpp"
#include "cantorsum/words.hpp"

using namespace cantorsum;

namespace {

SymbolPath path(std::vector<uint32_t> prefix, std::vector<uint32_t> tail, uint32_t m = 2) {
  return SymbolPath(Word(std::move(prefix), m), Word(std::move(tail), m));
}

}  // namespace

TEST_SUITE("words") {
  TEST_CASE("word validation") {
    CHECK_THROWS_AS(Word({2}, 2), Error);
    CHECK_THROWS_AS(Word({0}, 1), Error);
    CHECK(Word({}, 2).size() == 0);
    CHECK(Word({1, 0, 1}, 2).rank() == 5);
    CHECK(Word::from_rank(5, 3, 2) == Word({1, 0, 1}, 2));
  }

  TEST_CASE("path expansion and shift") {
    SymbolPath p = path({0, 1}, {2, 0}, 3);
    CHECK(p.at(0) == 0);
    CHECK(p.at(1) == 1);
    CHECK(p.at(2) == 2);
    CHECK(p.at(3) == 0);
    CHECK(p.at(4) == 2);
    SymbolPath q = p.shift(3);
    CHECK(q.at(0) == 0);
    CHECK(q.at(1) == 2);
    CHECK_THROWS_AS(SymbolPath(Word({}, 2), Word({}, 2)), Error);
  }

  TEST_CASE("wedge on the first-symbol split") {
    CHECK(wedge(path({}, {0}), path({}, {1})) == 0);
  }

  TEST_CASE("wedge with a shared prefix") {
    CHECK(wedge(path({0, 1}, {0}), path({0, 1}, {1})) == 2);
  }

  TEST_CASE("wedge of 001(0) against (001)") {
    SymbolPath a = path({0, 0, 1}, {0});
    SymbolPath b = path({}, {0, 0, 1});
    // expand both to depth 8 and compare symbolwise
    size_t expect = 8;
    for (size_t i = 0; i < 8; ++i) {
      if (a.at(i) != b.at(i)) {
        expect = i;
        break;
      }
    }
    CHECK(expect == 5);
    CHECK(wedge(a, b) == 5);
  }

  TEST_CASE("identical expansions are rejected") {
    CHECK_THROWS_AS(wedge(path({}, {0, 1}), path({0, 1}, {0, 1})), Error);
    CHECK_THROWS_AS(wedge(path({}, {0}), path({0, 0}, {0, 0})), Error);
  }

  TEST_CASE("wedge is symmetric on random pairs") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<uint32_t> sym(0, 1);
    std::uniform_int_distribution<size_t> plen(0, 4), tlen(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
      auto make = [&]() {
        std::vector<uint32_t> pre(plen(rng)), tail(tlen(rng));
        for (auto& s : pre) s = sym(rng);
        for (auto& s : tail) s = sym(rng);
        return path(std::move(pre), std::move(tail));
      };
      SymbolPath a = make(), b = make();
      size_t w1, w2;
      try {
        w1 = wedge(a, b);
      } catch (const Error&) {
        CHECK_THROWS_AS(wedge(b, a), Error);
        continue;
      }
      w2 = wedge(b, a);
      CHECK(w1 == w2);
    }
  }

  TEST_CASE("extensions differing right after a common word have wedge n") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<uint32_t> sym(0, 2);
    for (int trial = 0; trial < 100; ++trial) {
      size_t n = 1 + trial % 9;
      std::vector<uint32_t> u(n);
      for (auto& s : u) s = sym(rng);
      std::vector<uint32_t> ua = u, ub = u;
      ua.push_back(0);
      ub.push_back(1);
      SymbolPath a = path(std::move(ua), {sym(rng)}, 3);
      SymbolPath b = path(std::move(ub), {sym(rng)}, 3);
      CHECK(wedge(a, b) == n);
    }
  }

  TEST_CASE("cylinder enumeration") {
    auto w21 = cylinder_enumerate(2, 1);
    REQUIRE(w21.size() == 2);
    CHECK(w21[0] == Word({0}, 2));
    CHECK(w21[1] == Word({1}, 2));

    auto w22 = cylinder_enumerate(2, 2);
    REQUIRE(w22.size() == 4);
    CHECK(w22[0] == Word({0, 0}, 2));
    CHECK(w22[1] == Word({0, 1}, 2));
    CHECK(w22[2] == Word({1, 0}, 2));
    CHECK(w22[3] == Word({1, 1}, 2));

    auto w32 = cylinder_enumerate(3, 2);
    REQUIRE(w32.size() == 9);
    // direct nested-loop enumeration
    size_t idx = 0;
    for (uint32_t i = 0; i < 3; ++i) {
      for (uint32_t j = 0; j < 3; ++j) {
        CHECK(w32[idx++] == Word({i, j}, 3));
      }
    }
  }

  TEST_CASE("cylinder cap") {
    CHECK_THROWS_AS(cylinder_enumerate(2, 27), Error);
    try {
      cylinder_enumerate(2, 27);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::cap_exceeded);
    }
    CHECK(cylinder_enumerate(2, 5, 32).size() == 32);
    CHECK_THROWS_AS(cylinder_enumerate(2, 5, 31), Error);
  }
}
