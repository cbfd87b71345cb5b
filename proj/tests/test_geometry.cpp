#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "rb/geometry.hpp"

using namespace rb;

namespace {

QVec qv(const IntVec& a) {
  QVec v;
  for (int64_t c : a) v.emplace_back(static_cast<long>(c));
  return v;
}

mpq_class qdot(const IntVec& a, const IntVec& b) {
  mpq_class s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += mpq_class(static_cast<long>(a[k] * b[k]));
  return s;
}

IntVec isub(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

IntVec iadd(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

TangentialSites sites(int m, int n) {
  std::mt19937_64 rng(1000 + 17 * m + n);
  return random_sites(m, n, 20, rng);
}

std::vector<double> act_d(const GroupElement& h, const std::vector<double>& x, const TangentialSites& s) {
  const IntVec p = momentum(h.coeffs, s);
  std::vector<double> out(x.size());
  for (size_t k = 0; k < x.size(); ++k) out[k] = (h.twist ? -x[k] : x[k]) - static_cast<double>(p[k]);
  return out;
}

// Numerical edge predicates, written from the definitions of H_ij and S_ij.
bool black_edge_d(const std::vector<double>& p, const std::vector<double>& q, const IntVec& vi, const IntVec& vj) {
  double shift = 0, plane = 0, scale = 1;
  for (size_t k = 0; k < p.size(); ++k) {
    shift = std::max(shift, std::abs(q[k] - p[k] - static_cast<double>(vj[k] - vi[k])));
    plane += (p[k] - static_cast<double>(vi[k])) * static_cast<double>(vi[k] - vj[k]);
    scale += std::abs(p[k] * static_cast<double>(vi[k] - vj[k])) + static_cast<double>(vi[k] * vi[k]);
  }
  return shift < 1e-7 * scale && std::abs(plane) < 1e-7 * scale;
}

bool red_edge_d(const std::vector<double>& p, const std::vector<double>& q, const IntVec& vi, const IntVec& vj) {
  double mid = 0, sphere = 0, scale = 1;
  for (size_t k = 0; k < p.size(); ++k) {
    mid = std::max(mid, std::abs(p[k] + q[k] - static_cast<double>(vi[k] + vj[k])));
    sphere += (p[k] - static_cast<double>(vi[k])) * (p[k] - static_cast<double>(vj[k]));
    scale += p[k] * p[k] + std::abs(static_cast<double>(vi[k] * vj[k]));
  }
  return mid < 1e-7 * scale && std::abs(sphere) < 1e-7 * scale;
}

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("edges between sites") {
    const TangentialSites s = sites(3, 4);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const auto e = geometric_edges(qv(s.vectors[i]), qv(s.vectors[j]), s);
        bool black = false, red = false;
        for (const auto& x : e) {
          black |= x.color == EdgeColor::Black && x.i == i && x.j == j;
          red |= x.color == EdgeColor::Red && x.i == std::min(i, j) && x.j == std::max(i, j);
        }
        CHECK(black);
        CHECK(red);
      }
    const QVec p = qv(s.vectors[0]);
    CHECK_FALSE(geometric_edge(p, p, s).has_value());
  }

  TEST_CASE("an off-plane shift is not an edge") {
    const TangentialSites s(2, {{1, 0}, {0, 1}});
    const QVec p{mpq_class(3), mpq_class(7)};  // (p - v1, v1 - v2) = 2 + 7 != 0
    const QVec q{p[0] - 1, p[1] + 1};
    CHECK_FALSE(geometric_edge(p, q, s).has_value());
    const QVec on{mpq_class(5), mpq_class(4)};  // (on - v1, v1 - v2) = 4 - 4 = 0
    const auto e = geometric_edge(on, QVec{on[0] - 1, on[1] + 1}, s);
    REQUIRE(e.has_value());
    CHECK(*e == GeometricEdge{EdgeColor::Black, 0, 1});
  }

  TEST_CASE("equations of the three-edge example") {
    // x joined to x - v2 + v3, x - v1 + v3 and -x + v1 + v2.
    const ColoredGraph g = complete_closure({{0, 0, 0}, {0, 1, -1}, {1, 0, -1}, {-1, -1, 0}});
    const TangentialSites s = sites(3, 5);
    const RealizationSystem sys = build_system(g, s);
    REQUIRE(sys.equations.size() == 3);
    const IntVec &v1 = s.vectors[0], &v2 = s.vectors[1], &v3 = s.vectors[2];
    for (const auto& e : sys.equations) {
      const IntVec a = g.vertex(e.vertex).coeffs;
      const mpq_class rhs(e.rhs.to_mpz());
      if (a == IntVec{0, 1, -1}) {
        CHECK_FALSE(e.quadratic);
        CHECK(e.direction == isub(v2, v3));
        CHECK(rhs == qdot(v2, v2) - qdot(v2, v3));
      } else if (a == IntVec{1, 0, -1}) {
        CHECK_FALSE(e.quadratic);
        CHECK(e.direction == isub(v1, v3));
        CHECK(rhs == qdot(v1, v1) - qdot(v1, v3));
      } else {
        CHECK(e.quadratic);
        CHECK(e.direction == IntVec(isub(IntVec(5, 0), iadd(v1, v2))));
        CHECK(rhs == -qdot(v1, v2));
      }
    }
  }

  TEST_CASE("single vertex gives the empty system") {
    const TangentialSites s = sites(2, 3);
    const RealizationSystem sys = build_system(complete_closure({{0, 0}}), s);
    CHECK(sys.equations.empty());
    const RealizationVerdict v = solve_realization(sys);
    CHECK(v.cls == RealizationClass::GenericSolutions);
    REQUIRE(v.exact_point.has_value());
    for (int i = 0; i < 2; ++i) CHECK(*v.exact_point != qv(s.vectors[i]));
    CHECK_THROWS_AS(build_system(complete_closure({{0, 0, 0}}), s), std::invalid_argument);
  }

  TEST_CASE("red vertex -2e_i is the point sphere at v_i") {
    const TangentialSites s = sites(2, 4);
    const ColoredGraph g(2, {GroupElement{{0, 0}, false}, GroupElement{{-2, 0}, true}});
    const RealizationSystem sys = build_system(g, s);
    REQUIRE(sys.equations.size() == 1);
    // |x|^2 - 2(x, v1) = -|v1|^2
    CHECK(sys.equations[0].quadratic);
    CHECK(sys.equations[0].direction == isub(IntVec(4, 0), iadd(s.vectors[0], s.vectors[0])));
    CHECK(mpq_class(sys.equations[0].rhs.to_mpz()) == -qdot(s.vectors[0], s.vectors[0]));
    const RealizationVerdict v = solve_realization(sys);
    CHECK(v.cls == RealizationClass::OnlyInS);
    REQUIRE(v.exact_point.has_value());
    CHECK(*v.exact_point == qv(s.vectors[0]));
  }

  TEST_CASE("minigraph lies only in S") {
    const ColoredGraph g = complete_closure({{0, 0}, {1, -1}, {-2, 0}, {-1, -1}});
    for (int n = 2; n <= 6; ++n) {
      const TangentialSites s = sites(2, n);
      const RealizationVerdict v = solve_realization(build_system(g, s));
      CHECK(v.cls == RealizationClass::OnlyInS);
      REQUIRE(v.exact_point.has_value());
      CHECK(*v.exact_point == qv(s.vectors[0]));
      CHECK(v.residual < 1e-12);
    }
  }

  TEST_CASE("pair -3e_i + e_j has negative square radius") {
    // 0 - (e1 - e3) - (2e1 - e2 - e3) = (-3e1 + e2); the root and the red
    // vertex form the pair.
    const ColoredGraph g = complete_closure({{0, 0, 0}, {1, 0, -1}, {2, -1, -1}, {-3, 1, 0}});
    REQUIRE_FALSE(rank_and_degeneracy(g).degenerate);
    REQUIRE_FALSE(is_allowable(g));
    for (int n = 3; n <= 6; ++n) {
      const TangentialSites s = sites(3, n);
      const RealizationVerdict v = solve_realization(build_system(g, s));
      CHECK(v.cls == RealizationClass::EmptyReal);
      CHECK(v.radius_squared < 0);
    }
    // On its own the red vertex is a sphere of radius^2 = -3/4 |v1 - v2|^2.
    const TangentialSites s = sites(2, 4);
    const ColoredGraph pair(2, {GroupElement{{0, 0}, false}, GroupElement{{-3, 1}, true}});
    const RealizationVerdict v = solve_realization(build_system(pair, s));
    CHECK(v.cls == RealizationClass::EmptyReal);
    const IntVec d = isub(s.vectors[0], s.vectors[1]);
    CHECK(v.radius_squared == mpq_class(-3, 4) * qdot(d, d));
  }

  TEST_CASE("contradictory linear rows are inconsistent") {
    // Collinear sites make (x, v2 - v1) and (x, v3 - v1) proportional with
    // incompatible right-hand sides.
    const TangentialSites s(2, {{0, 0}, {1, 0}, {2, 0}});
    const ColoredGraph g = complete_closure({{0, 0, 0}, {-1, 1, 0}, {-1, 0, 1}});
    CHECK(solve_realization(build_system(g, s)).cls == RealizationClass::Inconsistent);
  }

  TEST_CASE("realized points satisfy the geometric edge predicates") {
    int realized = 0;
    for (const auto& g : enumerate_graphs(3, 4, 2)) {
      if (!is_allowable(g) || rank_and_degeneracy(g).degenerate) continue;
      for (int n = 3; n <= 5; ++n) {
        const TangentialSites s = sites(3, n);
        const RealizationVerdict v = solve_realization(build_system(g, s));
        CHECK(v.cls != RealizationClass::OnlyComplex);
        if (v.cls != RealizationClass::GenericSolutions) continue;
        ++realized;
        CHECK(v.residual <= 1e-9);
        for (const auto& e : g.edges()) {
          const GroupElement &a = g.vertex(e.u), &b = g.vertex(e.v);
          const auto pa = act_d(a, v.point, s), pb = act_d(b, v.point, s);
          if (e.label.color == EdgeColor::Black) {
            // b - a = e_i - e_j sends a x to a x + v_j - v_i.
            int i = e.label.i, j = e.label.j;
            if (b.coeffs[static_cast<size_t>(i)] - a.coeffs[static_cast<size_t>(i)] != 1) std::swap(i, j);
            CHECK(black_edge_d(pa, pb, s.vectors[i], s.vectors[j]));
          } else {
            CHECK(red_edge_d(pa, pb, s.vectors[e.label.i], s.vectors[e.label.j]));
          }
        }
        if (v.exact_point) {
          for (const auto& e : g.edges()) {
            const auto found = geometric_edges(act(g.vertex(e.u), *v.exact_point, s), act(g.vertex(e.v), *v.exact_point, s), s);
            bool match = false;
            for (const auto& f : found)
              match |= f.color == e.label.color && std::min(f.i, f.j) == e.label.i && std::max(f.i, f.j) == e.label.j;
            CHECK(match);
          }
        }
      }
    }
    CHECK(realized > 50);
  }

  TEST_CASE("avoidable constraints") {
    const ColoredGraph mini = complete_closure({{0, 0}, {1, -1}, {-2, 0}, {-1, -1}});
    for (int n = 2; n <= 5; ++n)
      for (const auto& c : avoidable_constraint(mini, sites(2, n))) CHECK(c.is_zero());
    CHECK_THROWS_AS(avoidable_constraint(complete_closure({{0, 0}, {1, -1}}), sites(2, 3)), NotDegenerate);

    // e1 - e2, e2 - e3, e1 - e3: relation (1, 1, -1) with sum of C equal to
    // e1e2 - ... nonzero, so every generic S gives a nonzero constraint.
    const ColoredGraph tri = complete_closure({{0, 0, 0}, {1, -1, 0}, {1, 0, -1}, {0, 1, -1}});
    REQUIRE(is_resonant(tri) == ResonanceClass::Avoidable);
    std::mt19937_64 rng(77);
    for (int k = 0; k < 20; ++k) {
      const auto c = avoidable_constraint(tri, random_sites(3, 4, 20, rng));
      bool nonzero = false;
      for (const auto& x : c) nonzero |= !x.is_zero();
      CHECK(nonzero);
    }
  }

  TEST_CASE("random sites are generic") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
      const int m = static_cast<int>(rng() % 4) + 1, n = static_cast<int>(rng() % 5) + 1;
      const TangentialSites s = random_sites(m, n, 3, rng);
      CHECK(s.pairwise_distinct());
      CHECK(rank(s.vectors) == std::min(m, n));
      for (const auto& v : s.vectors)
        for (int64_t c : v) CHECK(std::abs(c) <= 3);
    }
  }

  TEST_CASE("degenerate-resonant graphs have no realization outside S") {
    int checked = 0;
    for (const auto& g : enumerate_graphs(3, 5, 2)) {
      if (is_resonant(g) != ResonanceClass::DegenerateResonant) continue;
      CHECK_FALSE(is_allowable(g));
      for (int n = 4; n <= 6; ++n) {
        const RealizationVerdict v = solve_realization(build_system(g, sites(3, n)));
        CHECK(v.cls != RealizationClass::GenericSolutions);
      }
      ++checked;
    }
    CHECK(checked > 0);
  }
}
