#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "rb/multipoly.hpp"

using namespace rb;

namespace {

MultiPoly P(const char* text, int m = 2) { return MultiPoly::parse(text, m); }

// Leibniz formula over all permutations, independent of the subset expansion.
MultiPoly leibniz(const PolyMatrix& a) {
  const int n = a.order();
  std::vector<int> perm(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) perm[k] = k;
  MultiPoly sum(a.nvars());
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    MultiPoly term = MultiPoly::constant(a.nvars(), inversions % 2 ? -1 : 1);
    for (int i = 0; i < n; ++i) term = term * a.at(i, perm[i]);
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

}  // namespace

TEST_SUITE("multipoly") {
  TEST_CASE("arithmetic examples") {
    CHECK((MultiPoly::t(1) + MultiPoly::xi(1, 0)).str() == "t + x1");
    CHECK((MultiPoly::y(2, 0) * MultiPoly::y(2, 1) * MultiPoly::y(2, 0) * MultiPoly::y(2, 1)).str() == "y1^2*y2^2");
    const MultiPoly lhs = (P("t + x1") * P("t + x2")) - Integer(4) * P("x1*x2");
    CHECK(lhs == P("t^2 + x1*t + x2*t - 3*x1*x2"));
    CHECK(lhs.str() == "t^2 + x1*t + x2*t - 3*x1*x2");
  }

  TEST_CASE("print and parse round trip") {
    for (const char* text : {"0", "1", "-t", "t^2 + x1*t + x2*t + 4*x1*x2", "-2*y1*y2 + 3", "x1^3 - x1*x2*y1^2*t^4"}) {
      const MultiPoly p = P(text);
      CHECK(MultiPoly::parse(p.str(), 2) == p);
    }
    CHECK(P("t^2 + x1*t + x2*t + 4*x1*x2").str() == "t^2 + x1*t + x2*t + 4*x1*x2");
    for (int k = 0; k < 200; ++k) {
      const MultiPoly p = rbtest::random_poly(3, 6);
      CHECK(MultiPoly::parse(p.str(), 3) == p);
    }
    CHECK_THROWS_AS(MultiPoly::parse("t +* x1", 2), std::invalid_argument);
    CHECK_THROWS_AS(MultiPoly::parse("x3", 2), std::invalid_argument);
    CHECK_THROWS_AS(MultiPoly::parse("", 2), std::invalid_argument);
  }

  TEST_CASE("ring laws on random triples") {
    for (int k = 0; k < 500; ++k) {
      const MultiPoly a = rbtest::random_poly(3, 5), b = rbtest::random_poly(3, 5), c = rbtest::random_poly(3, 5);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
    }
  }

  TEST_CASE("big coefficients take the exact path") {
    const MultiPoly big = MultiPoly::constant(1, Integer::parse("100000000000000000000")) * MultiPoly::t(1);
    const MultiPoly sq = big * big;
    CHECK(sq.str() == "10000000000000000000000000000000000000000*t^2");
    PolyMatrix m(2, 1);
    m.at(0, 0) = big;
    m.at(1, 1) = big;
    CHECK(determinant(m) == sq);
  }

  TEST_CASE("degree overflow is detected") {
    MultiPoly p = MultiPoly::t(1);
    for (int k = 0; k < 5; ++k) p = p * p;  // t^32
    CHECK_THROWS_AS(p * p, DegreeOverflow);
  }

  TEST_CASE("determinant agrees with the Leibniz oracle") {
    for (int k = 0; k < 60; ++k) {
      const int n = static_cast<int>(rbtest::uniform(1, 4));
      PolyMatrix a(n, 2);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (rbtest::uniform(0, 3) > 0) a.at(r, c) = rbtest::random_poly(2, static_cast<int>(rbtest::uniform(1, 3)), 1, 9);
      CHECK(determinant(a) == leibniz(a));
    }
    for (int k = 0; k < 100; ++k) {
      const int n = static_cast<int>(rbtest::uniform(2, 3));
      PolyMatrix a(n, 1);
      std::vector<std::vector<int64_t>> v(n, std::vector<int64_t>(n));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          v[r][c] = rbtest::uniform(-9, 9);
          a.at(r, c) = MultiPoly::constant(1, v[r][c]);
        }
      // Cofactor formulas for the integer case.
      int64_t expected = n == 2 ? v[0][0] * v[1][1] - v[0][1] * v[1][0]
                                : v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
                                      v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
                                      v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
      CHECK(determinant(a) == MultiPoly::constant(1, expected));
    }
  }

  TEST_CASE("charpoly examples") {
    PolyMatrix zero(1, 1);
    CHECK(charpoly(zero).str() == "t");
    PolyMatrix g1(2, 2);
    g1.at(0, 0) = P("-x1");
    g1.at(0, 1) = P("2*y1*y2");
    g1.at(1, 0) = P("2*y1*y2");
    g1.at(1, 1) = P("-x2");
    CHECK(charpoly(g1).eliminate_roots() == P("t^2 + x1*t + x2*t - 3*x1*x2"));
    PolyMatrix g2(2, 2);
    g2.at(0, 1) = P("-2*y1*y2");
    g2.at(1, 0) = P("2*y1*y2");
    g2.at(1, 1) = P("-x1 - x2");
    CHECK(charpoly(g2).eliminate_roots() == P("t^2 + x1*t + x2*t + 4*x1*x2"));
  }

  TEST_CASE("eliminate_roots") {
    CHECK(P("y1^2*y2^2").eliminate_roots() == P("x1*x2"));
    CHECK(P("y1^2 - x1").eliminate_roots().is_zero());
    CHECK_THROWS_AS(P("y1*y2*t").eliminate_roots(), OddExponent);
  }

  TEST_CASE("specialization") {
    CHECK(P("t^2 + x1*t + x2*t - 3*x1*x2").specialize(0, 0) == P("t^2 + x2*t"));
    CHECK(P("t^2 + x1*t + x2*t + 4*x1*x2").specialize(0, 0) == P("t^2 + x2*t"));
    CHECK(P("t + x1*y2^2").specialize(1, 0) == P("t"));
    CHECK(P("t + x1").specialize(1, 5) == P("t + x1"));
    CHECK(P("t + x1^2*x2").specialize(0, 3) == P("t + 9*x2"));
    CHECK_THROWS_AS(P("y1*y2").specialize(0, 2), std::invalid_argument);
    for (int k = 0; k < 200; ++k) {
      const MultiPoly p = rbtest::random_poly(4, 8);
      const int i = static_cast<int>(rbtest::uniform(0, 3)), j = static_cast<int>(rbtest::uniform(0, 3));
      CHECK(p.specialize(i, 0).specialize(j, 0) == p.specialize(j, 0).specialize(i, 0));
    }
    const std::vector<Integer> z{Integer(2), Integer(-1)};
    const auto coeffs = P("t^2 + x1*t + x2*t - 3*x1*x2").specialize_all(z);
    REQUIRE(coeffs.size() == 3);
    CHECK(coeffs[0] == Integer(6));
    CHECK(coeffs[1] == Integer(1));
    CHECK(coeffs[2] == Integer(1));
  }

  TEST_CASE("variable reindexing") {
    const MultiPoly p = P("x1*t + 2*x2^2 + y2^2", 2);
    const MultiPoly q = p.insert_variable(1);
    CHECK(q.nvars() == 3);
    CHECK(q == MultiPoly::parse("x1*t + 2*x3^2 + y3^2", 3));
    CHECK(q.drop_variable(1) == p);
    CHECK_THROWS_AS(p.drop_variable(0), std::invalid_argument);
  }

  TEST_CASE("substitution and exact division") {
    const MultiPoly chi = P("t^2 + x1*t + x2*t - 3*x1*x2");
    // (t - x1)^2 + (x1 + x2)(t - x1) - 3 x1 x2 expanded by hand.
    CHECK(chi.substitute_t(P("t - x1")) == P("t^2 - x1*t + x2*t - 4*x1*x2"));
    MultiPoly q;
    CHECK((P("t + x1") * P("t - x2")).divide_monic_t(P("t + x1"), q));
    CHECK(q == P("t - x2"));
    CHECK_FALSE(P("t^2 + 1").divide_monic_t(P("t + 1"), q));
  }

  TEST_CASE("numeric evaluation") {
    const std::vector<double> two{2.0};
    CHECK(std::abs(MultiPoly::parse("t + x1", 1).eval(two, -2.0)) == doctest::Approx(0.0));
    const std::vector<double> ones{1.0, 1.0};
    CHECK(std::abs(P("t^2 + x1*t + x2*t - 3*x1*x2").eval(ones, 1.0)) == doctest::Approx(0.0));
    const std::vector<double> xi{4.0, 9.0};
    CHECK(P("y1*y2").eval(xi, 0.0).real() == doctest::Approx(6.0));
    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(P("t").eval(bad, 0.0), NonPositiveXi);
  }
}
