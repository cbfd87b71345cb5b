#pragma once

// Irreducibility certificates for characteristic polynomials, the parity test
// on linear factors, separation across a family and the xi_i = 0
// specialization tree.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rb/graphs.hpp"
#include "rb/multipoly.hpp"

namespace rb {

// --- parity ------------------------------------------------------------------

// A linear factor t + sum_i a_i xi_i.
struct LinearFactor {
  IntVec a;
  bool admissible;  // sum a_i == ell (mod 2)
};

struct ParityReport {
  int64_t ell;
  std::vector<LinearFactor> factors;  // every linear factor of chi
  uint64_t wrong_parity_value;        // chi(t = ell + 1, xi = 1) mod 2
  bool holds() const;                 // value nonzero and every factor admissible
};

bool parity_admissible(const IntVec& a, int64_t ell);
// All monic linear factors of chi, found from the integer roots of chi at the
// unit points xi = e_k and confirmed by exact division.
std::vector<IntVec> linear_factors(const MultiPoly& chi);
ParityReport parity_test(const MultiPoly& chi, int64_t ell);

// --- irreducibility ------------------------------------------------------------

enum class Verdict { Irreducible, Reducible, Inconclusive };
std::string to_string(Verdict v);

struct PrimePattern {
  uint32_t prime;
  std::vector<int> degrees;  // degree pattern of the specialization mod prime
};

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  int attempts = 0;                     // specializations tried
  std::vector<Integer> specialization;  // xi -> z for an irreducible verdict
  std::vector<PrimePattern> patterns;
  std::vector<MultiPoly> factors;  // reducible: product equals the input
};

struct CertifyOptions {
  int attempts = 64;
  std::vector<uint32_t> primes{101, 103, 107, 109, 113, 127, 131, 137};
  bool search_factors = true;  // try the exact factorization after the attempts fail
};

// IRREDUCIBLE when some integer specialization of xi gives a univariate
// polynomial whose factor degrees mod the listed primes admit no common
// proper subset sum; REDUCIBLE with factors verified by multiplication;
// INCONCLUSIVE otherwise. The schedule of specializations is seeded from a
// hash of chi's text.
Certificate certify_irreducible(const MultiPoly& chi, const CertifyOptions& opts = {});

// Re-checks a certificate against chi from scratch.
bool verify_certificate(const MultiPoly& chi, const Certificate& cert);

// Degrees d, 0 < d < n, that are subset sums of every pattern.
std::vector<int> common_factor_degrees(int n, const std::vector<PrimePattern>& patterns);

uint64_t text_hash(const std::string& text);

// --- separation ------------------------------------------------------------------

struct FamilyMember {
  ColoredGraph graph;
  MultiPoly chi;
};

struct Collision {
  int first;  // indices into the family
  int second;
};

// Pairs with equal chi but different canonical keys.
std::vector<Collision> separation_check(const std::vector<FamilyMember>& family);

// --- specialization tree -------------------------------------------------------

struct IndexSplit {
  int index;
  MultiPoly specialized;              // chi with xi_index = 0
  std::vector<ColoredGraph> blocks;   // project_components(g, index)
  std::vector<MultiPoly> block_chis;  // in m variables
  bool product_matches;
};

struct CongruentPair {
  int i, j;        // xi_i = xi_j = 0
  int split;       // index whose components are compared
  int first, second;  // component positions within that split
};

struct SpecializationTree {
  std::vector<IndexSplit> splits;
  std::vector<CongruentPair> congruences;
};

SpecializationTree specialization_tree(const MultiPoly& chi, const ColoredGraph& g);

}  // namespace rb
