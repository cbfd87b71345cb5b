#include "doctest.h"
#include "helpers.hpp"
#include "rb/blocks.hpp"

using namespace rb;

namespace {

MultiPoly P(const char* text, int m = 2) { return MultiPoly::parse(text, m); }

PolyMatrix matrix_from_text(const std::vector<std::vector<std::string>>& rows, int m) {
  const int n = static_cast<int>(rows.size());
  PolyMatrix a(n, m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a.at(r, c) = MultiPoly::parse(rows[r][c], m);
  return a;
}

// Cofactor expansion along the first row, written independently of the
// memoized determinant.
MultiPoly cofactor_det(const PolyMatrix& a) {
  const int n = a.order();
  if (n == 1) return a.at(0, 0);
  MultiPoly sum(a.nvars());
  for (int c = 0; c < n; ++c) {
    if (a.at(0, c).is_zero()) continue;
    PolyMatrix minor(n - 1, a.nvars());
    for (int r = 1; r < n; ++r)
      for (int k = 0, kk = 0; k < n; ++k)
        if (k != c) minor.at(r - 1, kk++) = a.at(r, k);
    MultiPoly term = a.at(0, c) * cofactor_det(minor);
    sum += (c % 2 ? -term : term);
  }
  return sum;
}

const std::vector<std::vector<std::string>> kB3 = {
    {"t", "2*y1*y2", "0", "0"},
    {"-2*y1*y2", "t+x1+x2", "2*y2*y3", "0"},
    {"0", "2*y2*y3", "t+x1+2*x2-x3", "2*y1*y3"},
    {"0", "0", "2*y1*y3", "t+2*x1+2*x2-2*x3"}};
const std::vector<std::vector<std::string>> kC3 = {
    {"t", "-2*y1*y2", "0", "0"},
    {"-2*y1*y2", "t-x1+x2", "2*y2*y3", "0"},
    {"0", "-2*y2*y3", "t-x1+2*x2+x3", "2*y1*y3"},
    {"0", "0", "2*y1*y3", "t-2*x1+2*x2+2*x3"}};

// chi mod 2 compared with prod (t + a_k(xi)) mod 2.
bool parity_structure_holds(const ColoredGraph& g) {
  const int m = g.m();
  MultiPoly prod = MultiPoly::constant(m, 1);
  for (const auto& v : g.vertices()) prod *= MultiPoly::t(m) + MultiPoly::linear_xi(m, v.coeffs);
  const MultiPoly diff = charpoly_block(g) - prod;
  for (const auto& term : diff.terms())
    if (term.coeff.mod_u64(2) != 0) return false;
  return true;
}

}  // namespace

namespace {

bool bipartite(const ColoredGraph& g) {
  std::vector<int> side(static_cast<size_t>(g.size()), -1);
  side[0] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : g.edges()) {
      int &a = side[static_cast<size_t>(e.u)], &b = side[static_cast<size_t>(e.v)];
      if (a >= 0 && b >= 0 && a == b) return false;
      if (a >= 0 && b < 0) b = 1 - a, changed = true;
      if (b >= 0 && a < 0) a = 1 - b, changed = true;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("blocks") {
  TEST_CASE("three-vertex example matrix") {
    const ColoredGraph g(2, {{{-1, -1}, true}, {{0, 0}, false}, {{1, -1}, false}});
    const BlockMatrix c = build_matrix(g);
    const PolyMatrix expected = matrix_from_text({{"-x1-x2", "2*y1*y2", "0"},
                                                  {"-2*y1*y2", "0", "2*y1*y2"},
                                                  {"0", "2*y1*y2", "x2-x1"}},
                                                 2);
    CHECK(c.entries == expected);
    // C_Au for a generic u: each diagonal entry minus u(xi).
    const IntVec u{3, -5};
    const BlockMatrix cu = translate_block(c, u, false);
    const MultiPoly uxi = P("3*x1 - 5*x2");
    PolyMatrix expected_u = expected;
    for (int k = 0; k < 3; ++k) expected_u.at(k, k) -= uxi;
    CHECK(cu.entries == expected_u);
    CHECK(translate_block(c, {0, 0}, false) == c);
    const BlockMatrix neg = translate_block(c, {0, 0}, true);
    for (int r = 0; r < 3; ++r)
      for (int s = 0; s < 3; ++s) CHECK(neg.entries.at(r, s) == -expected.at(r, s));
    CHECK(dump_matrix(c) == "-x1 - x2 | 2*y1*y2 | 0\n-2*y1*y2 | 0 | 2*y1*y2\n0 | 2*y1*y2 | -x1 + x2\n");
  }

  TEST_CASE("two-vertex blocks") {
    const ColoredGraph g1(2, {{{1, 0}, false}, {{0, 1}, false}});
    CHECK(build_matrix(g1).entries == matrix_from_text({{"-x1", "2*y1*y2"}, {"2*y1*y2", "-x2"}}, 2));
    CHECK(charpoly_block(g1) == P("t^2 + x1*t + x2*t - 3*x1*x2"));
    const ColoredGraph g2 = complete_closure({{0, 0}, {-1, -1}});
    CHECK(build_matrix(g2).entries == matrix_from_text({{"0", "-2*y1*y2"}, {"2*y1*y2", "-x1-x2"}}, 2));
    CHECK(charpoly_block(g2) == P("t^2 + x1*t + x2*t + 4*x1*x2"));
    CHECK(charpoly_block(g2).str() == "t^2 + x1*t + x2*t + 4*x1*x2");
    CHECK(charpoly_block(complete_closure({{0, 0}})) == P("t"));
  }

  TEST_CASE("printed four-by-four determinants") {
    for (const auto* rows : {&kB3, &kC3}) {
      const PolyMatrix a = matrix_from_text(*rows, 3);
      const MultiPoly chi = determinant(a).eliminate_roots();
      CHECK(chi == cofactor_det(a).eliminate_roots());
      CHECK(chi.degree_t() == 4);
      CHECK(chi.is_monic_in_t());
    }
    // Both are characteristic polynomials of enumerated graphs.
    CHECK(determinant(matrix_from_text(kB3, 3)).eliminate_roots() ==
          charpoly_block(complete_closure({{0, 0, 0}, {-2, -2, 2}, {-1, -2, 1}, {-1, -1, 0}})));
    CHECK(determinant(matrix_from_text(kC3, 3)).eliminate_roots() ==
          charpoly_block(complete_closure({{0, 0, 0}, {-1, 1, 0}, {1, -2, -1}, {2, -2, -2}})));
  }

  TEST_CASE("fast and generic charpoly paths agree") {
    for (const auto& g : enumerate_graphs(3, 5, 2)) {
      const MultiPoly fast = charpoly_block(g);
      CHECK(fast == charpoly_block(build_matrix(g)));
      CHECK(fast.is_monic_in_t());
      CHECK(fast.degree_t() == g.size());
      CHECK_FALSE(fast.has_roots());
    }
  }

  TEST_CASE("translation covariance") {
    for (const auto& g : enumerate_graphs(2, 4, 2)) {
      const BlockMatrix c = build_matrix(g);
      const MultiPoly chi = charpoly_block(c);
      const IntVec u = rbtest::random_vector(2, 4);
      const MultiPoly uxi = MultiPoly::linear_xi(2, u);
      CHECK(charpoly_block(translate_block(c, u, false)) == chi.substitute_t(MultiPoly::t(2) + uxi));
      // det(t + C - u) = (-1)^n chi(-t + u)
      MultiPoly twisted = chi.substitute_t(uxi - MultiPoly::t(2));
      if (g.size() % 2) twisted = -twisted;
      CHECK(charpoly_block(translate_block(c, u, true)) == twisted);
    }
  }

  TEST_CASE("tau symmetries of the charpoly") {
    int black = 0, total = 0, odd_equal = 0;
    for (const auto& g : enumerate_graphs(3, 5, 2)) {
      const MultiPoly chi = charpoly_block(g);
      // G tau has matrix -C: det(t + C) = (-1)^n chi(-t).
      MultiPoly flipped = chi.substitute_t(-MultiPoly::t(3));
      if (g.size() % 2) flipped = -flipped;
      CHECK(charpoly_block(build_matrix(conjugate(g))) == flipped);
      if (g.has_red_edge()) continue;
      // C_{tau G} = D - A against C_G = D + A: equal charpolys when the
      // adjacency sign can be gauged away, i.e. for bipartite graphs.
      const MultiPoly tau = charpoly_block(build_matrix(tau_image(g)));
      if (bipartite(g)) {
        CHECK(tau == chi);
        ++black;
      } else {
        ++total;
        odd_equal += tau == chi;
      }
    }
    CHECK(black > 0);
    CHECK(odd_equal < total);
  }

  TEST_CASE("charpoly is diagonal modulo two") {
    for (const auto& g : enumerate_graphs(3, 5, 3)) CHECK(parity_structure_holds(g));
  }

  TEST_CASE("scalar energies") {
    const TangentialSites s(2, {{1, 0}, {0, 1}});
    const auto k = scalar_energies(complete_closure({{0, 0}, {-1, -1}}), s);
    REQUIRE(k.size() == 2);
    CHECK(k[0] == Integer(0));
    CHECK(k[1] == kenergy(IntVec{-1, -1}, -1, s));
  }
}
