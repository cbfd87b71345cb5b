#pragma once

// Elements and maps of the group Z^m x| Z/2 used to index the frequency basis:
// mass, the quadratic-energy maps C and K, the Cayley generators and the edge
// predicate between group elements.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rb/integer.hpp"

namespace rb {

using IntVec = std::vector<int64_t>;

// (a, twist) with a in Z^m; twist == true carries tau.
struct GroupElement {
  IntVec coeffs;
  bool twist = false;

  int dim() const { return static_cast<int>(coeffs.size()); }
  int sign() const { return twist ? -1 : 1; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

// Group law, acting as x -> a + sigma x: (a,s)(b,r) = (a + s b, s r).
GroupElement compose(const GroupElement& lhs, const GroupElement& rhs);
GroupElement inverse(const GroupElement& e);

int64_t mass(const IntVec& a);
inline int64_t mass(const GroupElement& e) { return mass(e.coeffs); }

IntVec unit_vector(int m, int i);

// Integer quadratic form in e_1..e_m. Cross terms keyed by (i, j), i < j.
struct QuadForm {
  std::vector<Integer> diag;
  std::map<std::pair<int, int>, Integer> cross;

  explicit QuadForm(int m = 0) : diag(static_cast<size_t>(m)) {}

  int dim() const { return static_cast<int>(diag.size()); }
  bool is_zero() const;
  void add_cross(int i, int j, const Integer& c);

  QuadForm& operator+=(const QuadForm& o);
  QuadForm& operator-=(const QuadForm& o);
  friend QuadForm operator+(QuadForm a, const QuadForm& b) { return a += b; }
  friend QuadForm operator-(QuadForm a, const QuadForm& b) { return a -= b; }
  friend QuadForm operator*(const Integer& k, QuadForm q);
  friend QuadForm operator-(QuadForm q) { return Integer(-1) * std::move(q); }
  friend bool operator==(const QuadForm&, const QuadForm&) = default;

  std::string str() const;
};

// The symmetric product uv of two linear forms, as an element of S^2[Z^m].
QuadForm product(const IntVec& u, const IntVec& v);

// C((a, sigma)) = (sigma/2)(a^2 + a^(2)). Always integral.
QuadForm cmap(const IntVec& a, int sign);
inline QuadForm cmap(const GroupElement& e) { return cmap(e.coeffs, e.sign()); }

// Tangential sites v_1..v_m in Z^n.
struct TangentialSites {
  int n = 0;
  std::vector<IntVec> vectors;

  TangentialSites() = default;
  TangentialSites(int n_dim, std::vector<IntVec> v);  // validates

  int m() const { return static_cast<int>(vectors.size()); }
  Integer dot(int i, int j) const;
  bool pairwise_distinct() const;
};

// Momentum pi on linear forms (returns a vector in Z^n) and on quadratics.
IntVec momentum(const IntVec& a, const TangentialSites& s);
Integer momentum(const QuadForm& q, const TangentialSites& s);

// K((a, sigma)) = pi(C(a, sigma)).
Integer kenergy(const IntVec& a, int sign, const TangentialSites& s);
inline Integer kenergy(const GroupElement& e, const TangentialSites& s) {
  return kenergy(e.coeffs, e.sign(), s);
}

enum class EdgeColor { Black, Red };

// Edge marking {i, j}, i < j, zero-based.
struct EdgeLabel {
  EdgeColor color;
  int i;
  int j;

  bool contains(int k) const { return i == k || j == k; }
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

// Cayley edge: black iff same twist and b - a = +-(e_i - e_j); red iff the
// twists differ and a + b = -e_i - e_j.
std::optional<EdgeLabel> edge_between(const GroupElement& a, const GroupElement& b);

// Combinatorial vertices: twist is recomputed from mass (0 black, -2 red).
// Throws std::invalid_argument for other masses.
GroupElement colored(const IntVec& a);
std::optional<EdgeLabel> edge_between(const IntVec& a, const IntVec& b);

// Generators X^0 = {e_i - e_j} and X^{-2} = {(-e_i - e_j) tau}.
std::vector<GroupElement> generators(int m);

// Textual form `[a1,...,am]` or `[a1,...,am]t`.
std::string format_element(const GroupElement& e);
std::string format_vector(const IntVec& a);
GroupElement parse_element(std::string_view text);

}  // namespace rb
