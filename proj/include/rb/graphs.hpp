#pragma once

// Colored marked graphs: finite connected pieces of the Cayley graph of
// Z^m x| Z/2 with respect to the generators e_i - e_j and (-e_i - e_j) tau.
//
// Combinatorial graphs contain 0 and have vertices of mass 0 (black) or -2
// (red); their colors are derived from the mass when the graph is built.
// Projections and translates are general vertex sets, so the twist is kept
// on every vertex.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rb/lattice.hpp"

namespace rb {

struct Disconnected : std::invalid_argument {
  Disconnected() : std::invalid_argument("vertex set is not connected") {}
};

struct BadMass : std::invalid_argument {
  explicit BadMass(const IntVec& v)
      : std::invalid_argument("vertex " + format_vector(v) + " has mass outside {0,-2}"), vertex(v) {}
  IntVec vertex;
};

struct GraphEdge {
  int u;  // vertex indices, u < v
  int v;
  EdgeLabel label;
  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

class ColoredGraph {
 public:
  ColoredGraph() = default;
  // Induced graph on arbitrary group elements; no connectivity check.
  ColoredGraph(int m, std::vector<GroupElement> vertices);

  int m() const { return m_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<GroupElement>& vertices() const { return vertices_; }
  const GroupElement& vertex(int k) const { return vertices_[static_cast<size_t>(k)]; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  bool connected() const;
  bool has_red_edge() const;
  // Contains 0 untwisted and every twist matches the mass convention.
  bool is_combinatorial() const;
  std::vector<IntVec> coordinates() const;

 private:
  int m_ = 0;
  std::vector<GroupElement> vertices_;
  std::vector<GraphEdge> edges_;
};

// Combinatorial graph on a vertex set: 0 is moved to the front, the rest keep
// their order. Throws BadMass, Disconnected, or std::invalid_argument if 0 is
// missing or a vertex repeats.
ColoredGraph complete_closure(const std::vector<IntVec>& vertexset);

// Removes the edges marked with index i, splits into connected components
// and drops coordinate i. Components keep the twist of their vertices.
std::vector<ColoredGraph> project_components(const ColoredGraph& g, int i);

struct RankInfo {
  int dimension;
  int rank;
  bool degenerate;
};
// Rank of the vertices relative to the first vertex (the root).
RankInfo rank_and_degeneracy(const ColoredGraph& g);

// Integer relation basis among the non-root vertices: each relation has one
// coefficient per vertex (the root coefficient is 0).
std::vector<IntVec> relation_basis(const ColoredGraph& g);

enum class ResonanceClass { Nondegenerate, DegenerateResonant, Avoidable };
std::string to_string(ResonanceClass c);
ResonanceClass is_resonant(const ColoredGraph& g);
// Sum_a n_a C(a) for one relation.
QuadForm relation_energy(const ColoredGraph& g, const IntVec& relation);

struct AllowabilityWitness {
  int black;  // vertex indices
  int red;
  IntVec sum;
};
// nullopt when allowable; otherwise the first black/red pair (in vertex order)
// whose sum is -2e_i or -3e_i + e_j.
std::optional<AllowabilityWitness> allowability_witness(const ColoredGraph& g);
inline bool is_allowable(const ColoredGraph& g) { return !allowability_witness(g).has_value(); }

// Per-color rank data for the non-root vertices.
struct ColorRanks {
  int black_count, black_rank;
  int red_count, red_rank;
};
ColorRanks color_ranks(const ColoredGraph& g);

// Sorted vertex list of the representative through (0,+), minimized with
// that of tau G tau = {(-a, sigma)} for all-black graphs.
using CanonicalKey = std::vector<GroupElement>;
CanonicalKey canonical_form(const ColoredGraph& g);

// The re-rooted graph A h^{-1}: every vertex a becomes a h^{-1}.
ColoredGraph reroot(const ColoredGraph& g, int k);

// tau G = {(-a, -sigma)}; connected only for graphs without red edges, so
// other graphs are rejected.
ColoredGraph tau_image(const ColoredGraph& g);
// G tau = {(a, -sigma)}, whose matrix is -C_G.
ColoredGraph conjugate(const ColoredGraph& g);

// Candidate vertices in [-bound, bound]^m with mass 0 or -2, sorted, and the
// Cayley adjacency among them.
class VertexUniverse {
 public:
  VertexUniverse(int m, int bound);
  int m() const { return m_; }
  int size() const { return static_cast<int>(points_.size()); }
  int root() const { return root_; }
  const IntVec& point(int k) const { return points_[static_cast<size_t>(k)]; }
  const std::vector<int>& neighbours(int k) const { return adj_[static_cast<size_t>(k)]; }
  bool adjacent(int a, int b) const { return bits_[static_cast<size_t>(a) * points_.size() + static_cast<size_t>(b)]; }

 private:
  int m_;
  int root_ = -1;
  std::vector<IntVec> points_;
  std::vector<std::vector<int>> adj_;
  std::vector<bool> bits_;
};

struct EnumerationLimits {
  int m = 2;
  int max_vertices = 4;
  int coord_bound = 3;
};

// Reverse search over connected vertex sets containing 0: the parent of a set
// removes its largest non-root vertex whose removal keeps the set connected.
// Each set is visited once; all-black sets are reported only when they are
// not larger than their negation {-a}. Vertex sets are passed as sorted universe
// indices.
class GraphEnumerator {
 public:
  explicit GraphEnumerator(const EnumerationLimits& limits);

  const VertexUniverse& universe() const { return universe_; }
  const EnumerationLimits& limits() const { return limits_; }

  using Visitor = std::function<void(const std::vector<int>&)>;
  // Serial traversal of the whole tree.
  void for_each(const Visitor& visit) const;
  // Subtrees rooted at sets of exactly `depth` vertices, plus the smaller sets
  // on the way (which are reported separately by `prefix`). Used to split the
  // work into independent tasks.
  void split(int depth, std::vector<std::vector<int>>& prefix, std::vector<std::vector<int>>& roots) const;
  // Traverses the subtree below `start` (including `start`).
  void for_each_below(const std::vector<int>& start, const Visitor& visit) const;

  bool reported(const std::vector<int>& set) const;  // tau filter
  ColoredGraph graph(const std::vector<int>& set) const;

 private:
  bool connected_without(const std::vector<int>& set, int skip) const;
  bool is_child(const std::vector<int>& set, int added) const;
  void children(const std::vector<int>& set, std::vector<std::vector<int>>& out) const;
  void walk(std::vector<int>& set, const Visitor& visit) const;

  EnumerationLimits limits_;
  VertexUniverse universe_;
  std::vector<int> negation_;  // universe index of -a, or -1
};

// All enumerated graphs, in traversal order.
std::vector<ColoredGraph> enumerate_graphs(int m, int max_vertices, int coord_bound);

// Reference enumeration: breadth-first growth from {0} with deduplication by
// canonical key. Slow; kept to cross-check the reverse search.
std::vector<ColoredGraph> enumerate_graphs_bfs(int m, int max_vertices, int coord_bound);

// `vertices: [[0,0],[1,-1],[-1,-1]]`
std::string format_graph_line(const ColoredGraph& g);
ColoredGraph parse_graph_line(std::string_view line);

}  // namespace rb
