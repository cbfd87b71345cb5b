#include "doctest.h"
#include "helpers.hpp"
#include "rb/lattice.hpp"

using namespace rb;

namespace {

IntVec e(int m, int i) { return unit_vector(m, i); }
IntVec operator+(IntVec a, const IntVec& b) {
  for (size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}
IntVec operator-(IntVec a, const IntVec& b) {
  for (size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}
IntVec operator*(int64_t s, IntVec a) {
  for (auto& c : a) c *= s;
  return a;
}

QuadForm parse_quad(int m, std::initializer_list<std::tuple<int, int, int>> terms) {
  QuadForm q(m);
  for (auto [i, j, c] : terms) {
    if (i == j) q.diag[i] += Integer(c);
    else q.add_cross(i, j, c);
  }
  return q;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("group law") {
    const GroupElement a{{1, -2, 0}, true};
    const GroupElement b{{0, 3, -1}, false};
    // a tau . b = (a - b) tau
    CHECK(compose(a, b) == GroupElement{{1, -5, 1}, true});
    CHECK(compose(a, a) == GroupElement{{0, 0, 0}, false});
    CHECK(compose(b, inverse(b)) == GroupElement{{0, 0, 0}, false});
    for (int k = 0; k < 100; ++k) {
      GroupElement x{rbtest::random_vector(4, 5), rbtest::uniform(0, 1) == 1};
      GroupElement y{rbtest::random_vector(4, 5), rbtest::uniform(0, 1) == 1};
      GroupElement z{rbtest::random_vector(4, 5), rbtest::uniform(0, 1) == 1};
      CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
      CHECK(compose(x, inverse(x)) == GroupElement{IntVec(4, 0), false});
      if (!x.twist && !y.twist) CHECK(mass(compose(x, y)) == mass(x) + mass(y));
    }
  }

  TEST_CASE("mass") {
    CHECK(mass(GroupElement{{0, 0}, false}) == 0);
    CHECK(mass(GroupElement{{-1, -1}, true}) == -2);
    CHECK(mass(GroupElement{{1, -1}, false}) == 0);
  }

  TEST_CASE("cmap examples") {
    CHECK(cmap(IntVec{1, -1}, 1) == parse_quad(2, {{0, 0, 1}, {0, 1, -1}}));
    CHECK(cmap(IntVec{1, -1}, 1).str() == "e1^2 - e1*e2");
    CHECK(cmap(IntVec{-1, -1}, -1) == parse_quad(2, {{0, 1, -1}}));
    CHECK(cmap(IntVec{-2, 0}, -1) == parse_quad(2, {{0, 0, -1}}));
    CHECK(cmap(IntVec{0, -1, 0}, 1).is_zero());
    CHECK(cmap(IntVec{0, -1, 0}, -1).is_zero());
  }

  TEST_CASE("cmap sum rules on random pairs") {
    for (int k = 0; k < 150; ++k) {
      const int m = static_cast<int>(rbtest::uniform(2, 5));
      const IntVec u = rbtest::random_with_mass(m, 4, 0);
      const IntVec v = rbtest::random_with_mass(m, 4, 0);
      const IntVec r = rbtest::random_with_mass(m, 4, -2);
      const IntVec s = rbtest::random_with_mass(m, 4, -2);
      // black + black
      CHECK(cmap(u + v, 1) == cmap(u, 1) + cmap(v, 1) + product(u, v));
      // black u, red r: u + r is red
      CHECK(cmap(u + r, -1) == -cmap(u, 1) + cmap(r, -1) - product(u, r));
      // red - red is black
      CHECK(cmap(r - s, 1) == -cmap(r, -1) + cmap(s, -1) + product(s, s) - product(r, s));
    }
  }

  TEST_CASE("cmap vanishes exactly on 0 and -e_i") {
    for (int m = 1; m <= 4; ++m) {
      IntVec a(static_cast<size_t>(m), -3);
      while (true) {
        bool expected = mass(a) == 0 ? std::all_of(a.begin(), a.end(), [](int64_t c) { return c == 0; }) : false;
        if (mass(a) == -1) {
          int nonzero = 0;
          for (auto c : a) nonzero += c != 0;
          expected = nonzero == 1;
        }
        for (int sign : {1, -1}) CHECK_MESSAGE(cmap(a, sign).is_zero() == expected, format_vector(a));
        int k = m - 1;
        while (k >= 0 && a[k] == 3) a[k--] = -3;
        if (k < 0) break;
        ++a[k];
      }
    }
  }

  TEST_CASE("kenergy") {
    TangentialSites s(2, {{1, 0}, {0, 1}});
    CHECK(kenergy(IntVec{0, 0}, 1, s) == Integer(0));
    CHECK(kenergy(IntVec{1, -1}, 1, s) == Integer(1));
    for (int k = 0; k < 50; ++k) {
      std::vector<IntVec> v;
      const int m = 3, n = 4;
      while (static_cast<int>(v.size()) < m) {
        IntVec c = rbtest::random_vector(n, 20);
        if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
      }
      TangentialSites sites(n, v);
      CHECK(kenergy(IntVec{-2, 0, 0}, -1, sites) == -sites.dot(0, 0));
      const IntVec a = rbtest::random_vector(m, 4);
      for (int sign : {1, -1}) CHECK(kenergy(a, sign, sites) == momentum(cmap(a, sign), sites));
    }
    CHECK_THROWS_AS(kenergy(IntVec{1, 0, 0}, 1, s), std::invalid_argument);
    CHECK_THROWS_AS(TangentialSites(2, {{1, 0}, {1, 0}}), std::invalid_argument);
  }

  TEST_CASE("edge predicate") {
    const int m = 3;
    auto black = edge_between(IntVec{0, 0, 0}, e(m, 0) - e(m, 1));
    REQUIRE(black);
    CHECK(black->color == EdgeColor::Black);
    CHECK((black->i == 0 && black->j == 1));
    auto red = edge_between(IntVec{0, 0, 0}, IntVec{-1, -1, 0});
    REQUIRE(red);
    CHECK(red->color == EdgeColor::Red);
    CHECK_FALSE(edge_between(IntVec{0, 0, 0}, IntVec{-2, 0, 0}));
    CHECK_FALSE(edge_between(IntVec{0, 0, 0}, 2 * (e(m, 0) - e(m, 1))));
    CHECK_THROWS_AS(edge_between(IntVec{0, 0, 0}, IntVec{1, 0, 0}), std::invalid_argument);
    // Generators of the Cayley graph produce exactly the edges.
    for (const auto& x : generators(m)) {
      const GroupElement a{rbtest::random_with_mass(m, 3, 0), false};
      const auto label = edge_between(a, compose(x, a));
      REQUIRE(label);
      CHECK((label->color == EdgeColor::Red) == x.twist);
    }
  }

  TEST_CASE("element text round trip") {
    CHECK(format_element(GroupElement{{1, -1}, false}) == "[1,-1]");
    CHECK(format_element(GroupElement{{-1, -1}, true}) == "[-1,-1]t");
    CHECK(parse_element(" [ 2, -3 ,0]t ") == GroupElement{{2, -3, 0}, true});
    CHECK_THROWS_AS(parse_element("[1,,2]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element("[1,2"), std::invalid_argument);
  }
}
