#pragma once

// Factorization over Z: monic univariate polynomials by Zassenhaus (modular
// factorization, Hensel lifting, recombination of lifted factors), and monic-
// in-t multivariate polynomials by Kronecker substitution of the xi variables
// into a single large integer point.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "rb/multipoly.hpp"

namespace rb {

using ZPoly = std::vector<mpz_class>;  // lowest degree first, no trailing zeros

struct ZFactor {
  ZPoly factor;  // monic, irreducible over Q
  int multiplicity;
};

// Monic f with deg f >= 1. Factors sorted by (degree, coefficients).
std::vector<ZFactor> factor_monic_z(const ZPoly& f);

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b);
// Exact division by a monic polynomial; nullopt when the remainder is nonzero.
std::optional<ZPoly> zpoly_divide_monic(const ZPoly& a, const ZPoly& b);

// Factorization of a polynomial monic in t with no y variables into factors
// monic in t, each verified by exact division. Factors come out irreducible
// when the Kronecker base is large enough; the base is grown until the
// decoded factors multiply back to the input, and nullopt is returned if
// that never happens within the internal limit.
std::optional<std::vector<MultiPoly>> factor_monic_multivariate(const MultiPoly& chi);

}  // namespace rb
