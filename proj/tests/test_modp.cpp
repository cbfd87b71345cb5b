#include "doctest.h"
#include "helpers.hpp"
#include "rb/modp.hpp"

using namespace rb;

namespace {

UniPolyModP U(uint32_t p, std::vector<uint32_t> c) { return UniPolyModP(p, std::move(c)); }

// Irreducibility by trial division against every monic polynomial of degree
// 1..deg/2.
bool irreducible_brute(const UniPolyModP& f) {
  const uint32_t p = f.prime();
  const int n = f.degree();
  if (n <= 0) return false;
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<uint32_t> c(static_cast<size_t>(d) + 1, 0);
    c[static_cast<size_t>(d)] = 1;
    while (true) {
      if ((f % U(p, c)).is_zero()) return false;
      int k = 0;
      while (k < d && ++c[static_cast<size_t>(k)] == p) c[static_cast<size_t>(k++)] = 0;
      if (k == d) break;
    }
  }
  return true;
}

UniPolyModP random_poly(uint32_t p, int degree) {
  std::vector<uint32_t> c(static_cast<size_t>(degree) + 1);
  for (auto& x : c) x = static_cast<uint32_t>(rbtest::uniform(0, p - 1));
  c.back() = 1;
  return U(p, c);
}

}  // namespace

TEST_SUITE("modp") {
  TEST_CASE("field arithmetic") {
    CHECK(inverse_mod(3, 7) == 5);
    CHECK(inverse_mod(1, 2) == 1);
    const auto a = U(5, {1, 2, 3}), b = U(5, {4, 0, 1});
    UniPolyModP q, r;
    UniPolyModP::divmod(a * b + U(5, {1}), b, q, r);
    CHECK(q == a);
    CHECK(r == U(5, {1}));
    CHECK(U(5, {1, 1}).derivative() == U(5, {1}));
    CHECK(U(3, {0, 0, 0, 1}).derivative().is_zero());
    CHECK(gcd(U(7, {6, 0, 1}), U(7, {1, 1})) == U(7, {1, 1}));
    CHECK(U(7, {6, 0, 1}).str() == "t^2 + 6");
  }

  TEST_CASE("known factorizations") {
    CHECK(is_irreducible_modp(U(3, {1, 0, 1})));
    auto f = factor_modp(U(5, {1, 0, 0, 0, 1}));
    REQUIRE(f.size() == 2);
    CHECK(f[0].factor == U(5, {2, 0, 1}));
    CHECK(f[1].factor == U(5, {3, 0, 1}));
    f = factor_modp(U(2, {0, 1, 1}));
    REQUIRE(f.size() == 2);
    CHECK(f[0].factor == U(2, {0, 1}));
    CHECK(f[1].factor == U(2, {1, 1}));
    f = factor_modp(U(3, {0, 0, 0, 1}));  // t^3
    REQUIRE(f.size() == 1);
    CHECK(f[0].multiplicity == 3);
    f = factor_modp(U(2, {1, 0, 1}));  // (t+1)^2 over F_2
    REQUIRE(f.size() == 1);
    CHECK(f[0].multiplicity == 2);
    CHECK(degree_pattern(factor_modp(U(101, {100, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}))).size() >= 2);
  }

  TEST_CASE("factorization reproduces the input with irreducible factors") {
    for (uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
      for (int k = 0; k < 40; ++k) {
        const int deg = static_cast<int>(rbtest::uniform(1, p < 10 ? 7 : 5));
        UniPolyModP f = random_poly(p, deg);
        if (k % 3 == 0) f = f * random_poly(p, 2);  // some repeated structure
        if (k % 5 == 0) f = f * f;
        const auto factors = factor_modp(f);
        UniPolyModP prod = U(p, {1});
        int total = 0;
        for (const auto& [g, mult] : factors) {
          CHECK(g.is_monic());
          if (g.degree() <= 6) CHECK(irreducible_brute(g));
          CHECK(is_irreducible_modp(g));
          for (int e = 0; e < mult; ++e) prod = prod * g;
          total += mult * g.degree();
        }
        CHECK(prod == f);
        CHECK(total == f.degree());
      }
    }
  }

  TEST_CASE("Rabin test agrees with trial division") {
    for (uint32_t p : {2u, 3u, 7u}) {
      for (int k = 0; k < 60; ++k) {
        const UniPolyModP f = random_poly(p, static_cast<int>(rbtest::uniform(1, 6)));
        CHECK(is_irreducible_modp(f) == irreducible_brute(f));
      }
    }
  }
}
