#pragma once

// Exact linear algebra over Q (GMP rationals): row reduction, rank, integer
// nullspaces and affine solution sets.

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "rb/lattice.hpp"

namespace rb {

using QVec = std::vector<mpq_class>;
using QMatrix = std::vector<QVec>;  // row-major

QMatrix to_qmatrix(const std::vector<IntVec>& rows);

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& a);
// int64 fraction-free elimination with a GMP fallback on overflow; the
// _exact variants always reduce over Q.
int rank(const std::vector<IntVec>& rows);
int rank_exact(const std::vector<IntVec>& rows);

// Primitive integer basis of {n : sum_k n_k rows[k] = 0}, one vector per
// free variable of the row reduction, first nonzero entry positive.
std::vector<IntVec> integer_relations(const std::vector<IntVec>& rows);
std::vector<IntVec> integer_relations_exact(const std::vector<IntVec>& rows);

// Solution set of A x = b as particular + span(directions).
struct AffineSolution {
  QVec particular;
  std::vector<QVec> directions;
};
std::optional<AffineSolution> solve_affine(const QMatrix& a, const QVec& b, int ncols);

mpq_class dot(const QVec& a, const QVec& b);

}  // namespace rb
