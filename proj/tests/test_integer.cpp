#include "doctest.h"
#include "helpers.hpp"
#include "rb/integer.hpp"

using rb::Integer;

TEST_SUITE("integer") {
  TEST_CASE("small arithmetic matches int64") {
    for (int k = 0; k < 500; ++k) {
      const int64_t a = rbtest::uniform(-1'000'000, 1'000'000);
      const int64_t b = rbtest::uniform(-1'000'000, 1'000'000);
      CHECK((Integer(a) + Integer(b)).to_int64() == a + b);
      CHECK((Integer(a) - Integer(b)).to_int64() == a - b);
      CHECK((Integer(a) * Integer(b)).to_int64() == a * b);
      CHECK((Integer(a) <=> Integer(b)) == (a <=> b));
    }
  }

  TEST_CASE("overflow promotes to big integers and back") {
    const Integer big = Integer(INT64_MAX) + Integer(1);
    CHECK_FALSE(big.fits_int64());
    CHECK(big.str() == "9223372036854775808");
    CHECK((big - Integer(1)).fits_int64());
    CHECK((big - Integer(1)).to_int64() == INT64_MAX);
    const Integer sq = Integer(INT64_MAX) * Integer(INT64_MAX);
    CHECK(sq.divexact(Integer(INT64_MAX)) == Integer(INT64_MAX));
    CHECK_THROWS_AS(big.to_int64(), std::overflow_error);
    CHECK(Integer(INT64_MIN) * Integer(-1) == big);
  }

  TEST_CASE("parse, residues and exact division") {
    CHECK(Integer::parse("-123456789012345678901234567890").str() == "-123456789012345678901234567890");
    CHECK(Integer(-7).mod_u64(5) == 3);
    CHECK(Integer::parse("100000000000000000000").mod_u64(7) == 2);  // 10^20 mod 7
    CHECK(Integer(12).divexact(Integer(-4)) == Integer(-3));
    CHECK_THROWS_AS(Integer(7).divexact(Integer(2)), std::domain_error);
    CHECK(gcd(Integer(12), Integer(-18)) == Integer(6));
  }
}
