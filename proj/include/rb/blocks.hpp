#pragma once

// The matrix C_A of a graph: diagonal -sigma a(xi), black edges +-2 y_i y_j
// (symmetric, sign by the twist of the endpoints), red edges -2 y_i y_j at
// (untwisted row, twisted column) and +2 y_i y_j at the transposed position.
// The scalar energies K are kept apart.

#include <string>
#include <vector>

#include "rb/graphs.hpp"
#include "rb/multipoly.hpp"

namespace rb {

struct BlockMatrix {
  std::vector<GroupElement> order;
  PolyMatrix entries;

  int size() const { return entries.order(); }
  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;
};

BlockMatrix build_matrix(const ColoredGraph& g);
// Subtracts u(xi) Id, then negates everything when twisted.
BlockMatrix translate_block(const BlockMatrix& mat, const IntVec& u, bool twisted);
// det(t Id - C_A) with the square roots eliminated.
MultiPoly charpoly_block(const BlockMatrix& mat);
MultiPoly charpoly_block(const ColoredGraph& g);

// K(h) for every vertex h, the scalar part dropped from C_A.
std::vector<Integer> scalar_energies(const ColoredGraph& g, const TangentialSites& s);

// Rows of polynomial text separated by " | ".
std::string dump_matrix(const BlockMatrix& mat);

}  // namespace rb
