#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "rb/spectral.hpp"

using namespace rb;

namespace {

const ColoredGraph kG1(2, {{{1, 0}, false}, {{0, 1}, false}});
ColoredGraph g2() { return complete_closure({{0, 0}, {-1, -1}}); }

DenseMatrix random_matrix(int n, bool symmetric) {
  DenseMatrix a(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a.at(r, c) = static_cast<double>(rbtest::uniform(-1000, 1000)) / 100.0;
  if (symmetric)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < r; ++c) a.at(r, c) = a.at(c, r);
  return a;
}

// Determinant by Gaussian elimination with partial pivoting.
double det(DenseMatrix a) {
  double d = 1;
  for (int c = 0; c < a.n; ++c) {
    int p = c;
    for (int r = c + 1; r < a.n; ++r)
      if (std::abs(a.at(r, c)) > std::abs(a.at(p, c))) p = r;
    if (a.at(p, c) == 0) return 0;
    if (p != c) {
      for (int k = 0; k < a.n; ++k) std::swap(a.at(p, k), a.at(c, k));
      d = -d;
    }
    d *= a.at(c, c);
    for (int r = c + 1; r < a.n; ++r) {
      const double f = a.at(r, c) / a.at(c, c);
      for (int k = c; k < a.n; ++k) a.at(r, k) -= f * a.at(c, k);
    }
  }
  return d;
}

std::vector<double> random_xi(int m) {
  std::vector<double> xi(static_cast<size_t>(m));
  for (auto& x : xi) x = static_cast<double>(rbtest::uniform(1, 1000)) / 100.0;
  return xi;
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("general eigenvalues against trace and determinant") {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = static_cast<int>(rbtest::uniform(1, 9));
      const DenseMatrix a = random_matrix(n, false);
      const auto w = eigenvalues_general(a);
      REQUIRE(w.size() == static_cast<size_t>(n));
      Complex sum = 0, prod = 1, sq = 0;
      for (Complex l : w) {
        sum += l;
        prod *= l;
        sq += l * l;
      }
      double tr = 0, tr2 = 0;
      for (int r = 0; r < n; ++r) {
        tr += a.at(r, r);
        for (int c = 0; c < n; ++c) tr2 += a.at(r, c) * a.at(c, r);
      }
      const double d = det(a);
      CHECK(std::abs(sum - tr) < 1e-8 * (1 + std::abs(tr2)));
      CHECK(std::abs(sq - tr2) < 1e-8 * (1 + std::abs(tr2)));
      CHECK(std::abs(prod - d) < 1e-8 * (1 + std::abs(d)) * std::pow(10.0, n));
      // Complex eigenvalues of a real matrix come in conjugate pairs.
      for (Complex l : w)
        if (l.imag() != 0)
          CHECK(std::any_of(w.begin(), w.end(), [&](Complex o) { return std::abs(o - std::conj(l)) < 1e-8 * (1 + std::abs(l)); }));
    }
  }

  TEST_CASE("two complex pairs with equal imaginary parts") {
    // Plain Francis double shifts cycled on this block.
    const ColoredGraph g = complete_closure({{0, 0, 0}, {-1, -2, 1}, {-1, -1, 0}, {0, -1, 1}});
    const std::vector<double> xi{0.031633464776120945, 0.27929815359354393, 0.68906838163033513};
    const SpectrumReport r = eigenvalues_at(g, xi);
    // Reference values from an independent LAPACK run.
    const std::vector<Complex> expected{{-1.05115451, -0.07540776}, {-1.05115451, 0.07540776},
                                        {0.74022281, -0.07540767}, {0.74022281, 0.07540767}};
    CHECK(spectra_match(r.eigenvalues, expected, 1e-6));
    for (const auto& h : enumerate_graphs(3, 4, 2))
      for (int64_t k = 0; k < 1024; k += 7) CHECK_NOTHROW(eigenvalues_at(h, simplex_point(3, k)));
  }

  TEST_CASE("companion matrix with known roots") {
    // (t - 1)(t - 2)(t^2 + 1)(t + 3) = t^5 - 7t^3 + 6t^2 - 7t + 6... built
    // from its roots.
    const std::vector<Complex> roots{{1, 0}, {2, 0}, {0, 1}, {0, -1}, {-3, 0}};
    std::vector<Complex> poly{1};
    for (Complex r : roots) {
      std::vector<Complex> next(poly.size() + 1, 0);
      for (size_t k = 0; k < poly.size(); ++k) {
        next[k] += poly[k];
        next[k + 1] -= r * poly[k];
      }
      poly = next;
    }
    const int n = 5;
    DenseMatrix a(n);
    for (int c = 0; c < n; ++c) a.at(0, c) = -poly[static_cast<size_t>(c + 1)].real();
    for (int r = 1; r < n; ++r) a.at(r, r - 1) = 1;
    CHECK(spectra_match(eigenvalues_general(a), roots, 1e-10));
  }

  TEST_CASE("symmetric routines agree") {
    for (int trial = 0; trial < 200; ++trial) {
      const int n = static_cast<int>(rbtest::uniform(1, 9));
      const DenseMatrix a = random_matrix(n, true);
      const auto jac = eigenvalues_symmetric(a);
      const auto qr = eigenvalues_general(a);
      std::vector<Complex> jc(jac.begin(), jac.end());
      CHECK(spectra_match(qr, jc, 1e-9));
      for (Complex l : qr) CHECK(is_real_eigenvalue(l));
    }
    CHECK_THROWS(eigenvalues_symmetric(random_matrix(3, false)));
  }

  TEST_CASE("two-vertex blocks at xi = (1, 1)") {
    const std::vector<double> one{1.0, 1.0};
    const auto r1 = eigenvalues_at(kG1, one);
    CHECK(r1.n_real == 2);
    CHECK(r1.distinct);
    CHECK(spectra_match(r1.eigenvalues, {Complex(-3, 0), Complex(1, 0)}, 1e-12));
    const auto r2 = eigenvalues_at(g2(), one);
    CHECK(r2.n_real == 0);
    CHECK(spectra_match(r2.eigenvalues, {Complex(-1, std::sqrt(3.0)), Complex(-1, -std::sqrt(3.0))}, 1e-12));
    CHECK(real_margin(r2) < 0);
    CHECK_THROWS_AS(eigenvalues_at(kG1, std::vector<double>{1.0, 0.0}), NonPositiveXi);
    CHECK_THROWS_AS(eigenvalues_at(kG1, std::vector<double>{-1.0, 2.0}), NonPositiveXi);
  }

  TEST_CASE("symmetric blocks have real spectra") {
    for (const auto& g : enumerate_graphs(3, 5, 2)) {
      if (g.has_red_edge()) continue;
      const auto r = eigenvalues_at(g, random_xi(3));
      CHECK(r.n_real == g.size());
      CHECK(r.max_residual <= 1e-6);
    }
  }

  TEST_CASE("spectra are roots of the charpoly") {
    for (const auto& g : enumerate_graphs(3, 5, 2)) {
      const auto r = eigenvalues_at(g, random_xi(3));
      CHECK(r.eigenvalues.size() == static_cast<size_t>(g.size()));
      CHECK(r.max_residual <= 1e-6);
    }
  }

  TEST_CASE("homogeneity") {
    CHECK(homogeneity_check(kG1, std::vector<double>{1.0, 1.0}, 4.0));
    auto r = eigenvalues_at(kG1, std::vector<double>{4.0, 4.0});
    CHECK(spectra_match(r.eigenvalues, {Complex(4, 0), Complex(-12, 0)}, 1e-12));
    const ColoredGraph mini = complete_closure({{0, 0}, {1, -1}, {-2, 0}, {-1, -1}});
    for (int k = 0; k < 20; ++k) {
      CHECK(homogeneity_check(mini, random_xi(2), 2.0));
      CHECK(homogeneity_check(mini, random_xi(2), 1.0));
    }
    CHECK_THROWS(homogeneity_check(mini, random_xi(2), 0.0));
  }

  TEST_CASE("translation covariance") {
    for (const auto& g : enumerate_graphs(3, 4, 2)) {
      const BlockMatrix c = build_matrix(g);
      const IntVec u = rbtest::random_vector(3, 3);
      const auto xi = random_xi(3);
      const MultiPoly uxi = MultiPoly::linear_xi(3, u);
      const double shift = uxi.eval(xi, 0.0).real();
      auto base = eigenvalues_at(c, charpoly_block(c), xi).eigenvalues;
      for (bool twisted : {false, true}) {
        const BlockMatrix t = translate_block(c, u, twisted);
        const auto moved = eigenvalues_at(t, charpoly_block(t), xi).eigenvalues;
        std::vector<Complex> expected;
        for (Complex l : base) expected.push_back(twisted ? -(l - shift) : l - shift);
        CHECK(spectra_match(moved, expected, 1e-8));
      }
    }
  }

  TEST_CASE("simplex points") {
    CHECK(simplex_point(1, 5) == std::vector<double>{1.0});
    for (int m = 2; m <= 4; ++m)
      for (int64_t s = 0; s < 200; ++s) {
        const auto xi = simplex_point(m, s);
        double total = 0;
        for (double x : xi) {
          CHECK(x > 0);
          total += x;
        }
        CHECK(std::abs(total - 1) < 1e-12);
      }
    // Coverage: m = 2 points fill the interval.
    std::vector<double> first;
    for (int64_t s = 0; s < 100; ++s) first.push_back(simplex_point(2, s)[0]);
    std::sort(first.begin(), first.end());
    for (size_t k = 1; k < first.size(); ++k) CHECK(first[k] - first[k - 1] < 0.05);
  }

  TEST_CASE("G2 region from the discriminant") {
    const QuadraticRegion q = quadratic_block_region(charpoly_block(g2()));
    CHECK(q.a == Integer(1));
    CHECK(q.b == Integer(-14));
    CHECK(q.c == Integer(1));
    REQUIRE(q.has_complex_interval);
    CHECK(q.lo == doctest::Approx(7 - 4 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(q.hi == doctest::Approx(7 + 4 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK_FALSE(quadratic_block_region(charpoly_block(kG1)).has_complex_interval);
    // Sampled classification agrees with the interval.
    for (int64_t s = 0; s < 500; ++s) {
      const auto xi = simplex_point(2, s);
      const double ratio = xi[0] / xi[1];
      if (std::abs(ratio - q.lo) < 1e-6 || std::abs(ratio - q.hi) < 1e-6) continue;
      const bool complex_expected = ratio > q.lo && ratio < q.hi;
      CHECK((eigenvalues_at(g2(), xi).n_real == 0) == complex_expected);
    }
  }

  TEST_CASE("elliptic search") {
    const auto one = search_elliptic({complete_closure({{0}})}, 1, {.samples = 4});
    CHECK(one.found);
    const auto only_g2 = search_elliptic({g2()}, 2, {.samples = 256});
    REQUIRE(only_g2.found);
    const double ratio = only_g2.point[0] / only_g2.point[1];
    CHECK((ratio < 7 - 4 * std::sqrt(3.0) || ratio > 7 + 4 * std::sqrt(3.0)));
    CHECK(only_g2.n_good < only_g2.n_samples);
    std::vector<ColoredGraph> family;
    for (const auto& g : enumerate_graphs(2, 4, 2))
      if (is_allowable(g)) family.push_back(g);
    const auto serial = search_elliptic(family, 2, {.samples = 512, .threads = 1});
    const auto parallel = search_elliptic(family, 2, {.samples = 512});
    CHECK(serial.found);
    CHECK(serial.point == parallel.point);
    CHECK(serial.margin == parallel.margin);
    CHECK(serial.n_good == parallel.n_good);
    CHECK(serial.graph_margins.size() == family.size());
    // A non-allowable block with -2e1 and -2e2 next to 0 has no real
    // spectrum anywhere, so the whole enumerated family fails honestly.
    const auto blocker = search_elliptic({complete_closure({{0, 0}, {-2, 0}, {-1, -1}, {0, -2}})}, 2, {.samples = 512});
    CHECK_FALSE(blocker.found);
    CHECK(blocker.margin < 0);
  }
}
