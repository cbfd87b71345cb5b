#pragma once

// Univariate polynomials over a small prime field and their complete
// factorization: squarefree decomposition, distinct-degree splitting and
// Cantor-Zassenhaus equal-degree splitting.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rb/integer.hpp"

namespace rb {

class UniPolyModP {
 public:
  UniPolyModP() = default;
  // Coefficients lowest degree first, reduced mod p.
  UniPolyModP(uint32_t p, std::vector<uint32_t> coeffs);
  static UniPolyModP from_integers(uint32_t p, std::span<const Integer> coeffs);
  static UniPolyModP monomial(uint32_t p, int degree, uint32_t c = 1);

  uint32_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  uint32_t coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(k)] : 0; }
  uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<uint32_t>& coeffs() const { return c_; }

  UniPolyModP monic() const;
  UniPolyModP derivative() const;

  UniPolyModP& operator+=(const UniPolyModP& o);
  UniPolyModP& operator-=(const UniPolyModP& o);
  friend UniPolyModP operator+(UniPolyModP a, const UniPolyModP& b) { return a += b; }
  friend UniPolyModP operator-(UniPolyModP a, const UniPolyModP& b) { return a -= b; }
  friend UniPolyModP operator*(const UniPolyModP& a, const UniPolyModP& b);
  UniPolyModP scaled(uint32_t k) const;
  friend bool operator==(const UniPolyModP&, const UniPolyModP&) = default;

  // Euclidean division; divisor must be nonzero.
  static void divmod(const UniPolyModP& a, const UniPolyModP& b, UniPolyModP& q, UniPolyModP& r);
  friend UniPolyModP operator%(const UniPolyModP& a, const UniPolyModP& b);
  friend UniPolyModP operator/(const UniPolyModP& a, const UniPolyModP& b);

  std::string str() const;

 private:
  void trim();

  uint32_t p_ = 2;
  std::vector<uint32_t> c_;
};

uint32_t inverse_mod(uint32_t a, uint32_t p);
UniPolyModP gcd(UniPolyModP a, UniPolyModP b);  // monic, or zero
// base^e mod f.
UniPolyModP powmod(const UniPolyModP& base, const Integer& e, const UniPolyModP& f);

struct ModPFactor {
  UniPolyModP factor;  // monic irreducible
  int multiplicity;
};

// Complete factorization of a nonzero polynomial into monic irreducibles,
// sorted by (degree, coefficients). The leading coefficient is dropped.
// Randomized splitting uses a fixed-seed generator, so results are
// deterministic.
std::vector<ModPFactor> factor_modp(const UniPolyModP& f);

// Degrees of the irreducible factors with multiplicity, ascending.
std::vector<int> degree_pattern(const std::vector<ModPFactor>& factors);

// Rabin's test.
bool is_irreducible_modp(const UniPolyModP& f);

}  // namespace rb
