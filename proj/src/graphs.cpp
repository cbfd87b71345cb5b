#include "rb/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

#include "rb/linalg.hpp"

namespace rb {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
  return r;
}

bool is_zero_vector(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](int64_t v) { return v == 0; });
}

// -2e_i or -3e_i + e_j.
bool forbidden_sum(const IntVec& s) {
  int minus2 = 0, minus3 = 0, plus1 = 0, other = 0;
  for (int64_t v : s) {
    if (v == 0) continue;
    if (v == -2) ++minus2;
    else if (v == -3) ++minus3;
    else if (v == 1) ++plus1;
    else ++other;
  }
  if (other) return false;
  return (minus2 == 1 && minus3 == 0 && plus1 == 0) || (minus3 == 1 && plus1 == 1 && minus2 == 0);
}

}  // namespace

ColoredGraph::ColoredGraph(int m, std::vector<GroupElement> vertices) : m_(m), vertices_(std::move(vertices)) {
  for (const auto& v : vertices_)
    if (v.dim() != m_) throw std::invalid_argument("ColoredGraph: vertex dimension mismatch");
  for (int u = 0; u < size(); ++u)
    for (int v = u + 1; v < size(); ++v)
      if (auto label = edge_between(vertices_[u], vertices_[v])) edges_.push_back({u, v, *label});
}

bool ColoredGraph::connected() const {
  if (vertices_.empty()) return true;
  UnionFind uf(size());
  for (const auto& e : edges_) uf.unite(e.u, e.v);
  const int r = uf.find(0);
  for (int k = 1; k < size(); ++k)
    if (uf.find(k) != r) return false;
  return true;
}

bool ColoredGraph::has_red_edge() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const GraphEdge& e) { return e.label.color == EdgeColor::Red; });
}

bool ColoredGraph::is_combinatorial() const {
  bool root = false;
  for (const auto& v : vertices_) {
    const int64_t mu = mass(v);
    if (mu == 0 && v.twist) return false;
    if (mu == -2 && !v.twist) return false;
    if (mu != 0 && mu != -2) return false;
    if (!v.twist && is_zero_vector(v.coeffs)) root = true;
  }
  return root;
}

std::vector<IntVec> ColoredGraph::coordinates() const {
  std::vector<IntVec> out;
  for (const auto& v : vertices_) out.push_back(v.coeffs);
  return out;
}

ColoredGraph complete_closure(const std::vector<IntVec>& vertexset) {
  if (vertexset.empty()) throw std::invalid_argument("complete_closure: empty vertex set");
  const size_t m = vertexset[0].size();
  std::vector<GroupElement> ordered;
  int zero = -1;
  for (size_t k = 0; k < vertexset.size(); ++k) {
    const IntVec& v = vertexset[k];
    if (v.size() != m) throw std::invalid_argument("complete_closure: vertex dimension mismatch");
    const int64_t mu = mass(v);
    if (mu != 0 && mu != -2) throw BadMass(v);
    if (is_zero_vector(v)) zero = static_cast<int>(k);
  }
  if (zero < 0) throw std::invalid_argument("complete_closure: 0 must be a vertex");
  ordered.push_back(colored(vertexset[static_cast<size_t>(zero)]));
  for (size_t k = 0; k < vertexset.size(); ++k)
    if (static_cast<int>(k) != zero) ordered.push_back(colored(vertexset[k]));
  std::vector<GroupElement> sorted = ordered;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("complete_closure: repeated vertex");
  ColoredGraph g(static_cast<int>(m), std::move(ordered));
  if (!g.connected()) throw Disconnected();
  return g;
}

std::vector<ColoredGraph> project_components(const ColoredGraph& g, int i) {
  if (i < 0 || i >= g.m()) throw std::out_of_range("project_components: index");
  UnionFind uf(g.size());
  for (const auto& e : g.edges())
    if (!e.label.contains(i)) uf.unite(e.u, e.v);
  std::vector<int> order;  // component representatives by first vertex
  std::map<int, std::vector<GroupElement>> parts;
  for (int k = 0; k < g.size(); ++k) {
    const int r = uf.find(k);
    if (!parts.count(r)) order.push_back(r);
    GroupElement p = g.vertex(k);
    p.coeffs.erase(p.coeffs.begin() + i);
    parts[r].push_back(std::move(p));
  }
  std::vector<ColoredGraph> out;
  for (int r : order) out.emplace_back(g.m() - 1, std::move(parts[r]));
  return out;
}

namespace {

std::vector<IntVec> relative_vertices(const ColoredGraph& g) {
  std::vector<IntVec> rows;
  for (int k = 1; k < g.size(); ++k) {
    IntVec r = g.vertex(k).coeffs;
    for (size_t c = 0; c < r.size(); ++c) r[c] -= g.vertex(0).coeffs[c];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

RankInfo rank_and_degeneracy(const ColoredGraph& g) {
  RankInfo info;
  info.dimension = g.size() - 1;
  info.rank = info.dimension > 0 && g.m() > 0 ? rank(relative_vertices(g)) : 0;
  info.degenerate = info.rank < info.dimension;
  return info;
}

std::vector<IntVec> relation_basis(const ColoredGraph& g) {
  std::vector<IntVec> rows = relative_vertices(g);
  if (rows.empty()) return {};
  if (g.m() == 0) {
    // Every vertex is the zero vector: each one is a relation on its own.
    std::vector<IntVec> out;
    for (int k = 1; k < g.size(); ++k) {
      IntVec r(static_cast<size_t>(g.size()), 0);
      r[k] = 1;
      out.push_back(r);
    }
    return out;
  }
  std::vector<IntVec> out;
  for (const auto& rel : integer_relations(rows)) {
    IntVec full(1, 0);
    full.insert(full.end(), rel.begin(), rel.end());
    out.push_back(std::move(full));
  }
  return out;
}

QuadForm relation_energy(const ColoredGraph& g, const IntVec& relation) {
  QuadForm sum(g.m());
  for (int k = 0; k < g.size(); ++k)
    if (relation[k] != 0) sum += Integer(relation[k]) * cmap(g.vertex(k));
  return sum;
}

std::string to_string(ResonanceClass c) {
  switch (c) {
    case ResonanceClass::Nondegenerate:
      return "nondegenerate";
    case ResonanceClass::DegenerateResonant:
      return "degenerate_resonant";
    case ResonanceClass::Avoidable:
      return "avoidable";
  }
  return "?";
}

ResonanceClass is_resonant(const ColoredGraph& g) {
  const auto basis = relation_basis(g);
  if (basis.empty()) return ResonanceClass::Nondegenerate;
  for (const auto& rel : basis)
    if (!relation_energy(g, rel).is_zero()) return ResonanceClass::Avoidable;
  return ResonanceClass::DegenerateResonant;
}

std::optional<AllowabilityWitness> allowability_witness(const ColoredGraph& g) {
  for (int a = 0; a < g.size(); ++a) {
    if (g.vertex(a).twist) continue;
    for (int b = 0; b < g.size(); ++b) {
      if (!g.vertex(b).twist) continue;
      IntVec s = add(g.vertex(a).coeffs, g.vertex(b).coeffs);
      if (forbidden_sum(s)) return AllowabilityWitness{a, b, std::move(s)};
    }
  }
  return std::nullopt;
}

ColorRanks color_ranks(const ColoredGraph& g) {
  std::vector<IntVec> black, red;
  const std::vector<IntVec> rel = relative_vertices(g);
  for (int k = 1; k < g.size(); ++k) (g.vertex(k).twist == g.vertex(0).twist ? black : red).push_back(rel[k - 1]);
  ColorRanks r{};
  r.black_count = static_cast<int>(black.size());
  r.red_count = static_cast<int>(red.size());
  r.black_rank = black.empty() || g.m() == 0 ? 0 : rank(black);
  r.red_rank = red.empty() || g.m() == 0 ? 0 : rank(red);
  return r;
}

CanonicalKey canonical_form(const ColoredGraph& g) {
  // Representative rooted at (0,+): a graph through (0,-) only is replaced by
  // G tau.
  const GroupElement zero{IntVec(static_cast<size_t>(g.m()), 0), false};
  const GroupElement zero_twisted{zero.coeffs, true};
  const auto& vs = g.vertices();
  const bool flip = std::find(vs.begin(), vs.end(), zero) == vs.end() &&
                    std::find(vs.begin(), vs.end(), zero_twisted) != vs.end();
  const ColoredGraph h = flip ? conjugate(g) : g;
  CanonicalKey key = h.vertices();
  std::sort(key.begin(), key.end());
  if (h.is_combinatorial() && !h.has_red_edge()) {
    CanonicalKey image = conjugate(tau_image(h)).vertices();
    std::sort(image.begin(), image.end());
    if (image < key) key = std::move(image);
  }
  return key;
}

ColoredGraph reroot(const ColoredGraph& g, int k) {
  const GroupElement hinv = inverse(g.vertex(k));
  std::vector<GroupElement> vs;
  vs.push_back(compose(g.vertex(k), hinv));
  for (int j = 0; j < g.size(); ++j)
    if (j != k) vs.push_back(compose(g.vertex(j), hinv));
  return ColoredGraph(g.m(), std::move(vs));
}

ColoredGraph tau_image(const ColoredGraph& g) {
  if (g.has_red_edge()) throw std::invalid_argument("tau_image: the image of a graph with red edges is disconnected");
  std::vector<GroupElement> vs;
  for (const auto& v : g.vertices()) {
    GroupElement w = v;
    for (auto& c : w.coeffs) c = -c;
    w.twist = !w.twist;
    vs.push_back(std::move(w));
  }
  return ColoredGraph(g.m(), std::move(vs));
}

ColoredGraph conjugate(const ColoredGraph& g) {
  std::vector<GroupElement> vs = g.vertices();
  for (auto& v : vs) v.twist = !v.twist;
  return ColoredGraph(g.m(), std::move(vs));
}

// --- enumeration -----------------------------------------------------------

VertexUniverse::VertexUniverse(int m, int bound) : m_(m) {
  if (m < 1 || bound < 1) throw std::invalid_argument("VertexUniverse: m and bound must be >= 1");
  IntVec v(static_cast<size_t>(m), -bound);
  while (true) {
    const int64_t mu = mass(v);
    if (mu == 0 || mu == -2) points_.push_back(v);
    int k = m - 1;
    while (k >= 0 && v[k] == bound) v[k--] = -bound;
    if (k < 0) break;
    ++v[k];
  }
  std::sort(points_.begin(), points_.end());
  std::map<IntVec, int> index;
  for (int k = 0; k < size(); ++k) index[points_[k]] = k;
  root_ = index.at(IntVec(static_cast<size_t>(m), 0));
  adj_.resize(points_.size());
  bits_.assign(points_.size() * points_.size(), false);
  const auto gens = generators(m);
  for (int k = 0; k < size(); ++k) {
    const GroupElement a = colored(points_[k]);
    for (const auto& x : gens) {
      const GroupElement b = compose(x, a);
      auto it = index.find(b.coeffs);
      if (it == index.end()) continue;
      if (!bits_[static_cast<size_t>(k) * points_.size() + it->second]) {
        bits_[static_cast<size_t>(k) * points_.size() + it->second] = true;
        adj_[k].push_back(it->second);
      }
    }
    std::sort(adj_[k].begin(), adj_[k].end());
  }
}

GraphEnumerator::GraphEnumerator(const EnumerationLimits& limits)
    : limits_(limits), universe_(limits.m, limits.coord_bound) {
  if (limits.max_vertices < 1) throw std::invalid_argument("max_vertices must be >= 1");
  std::map<IntVec, int> index;
  for (int k = 0; k < universe_.size(); ++k) index[universe_.point(k)] = k;
  negation_.assign(static_cast<size_t>(universe_.size()), -1);
  for (int k = 0; k < universe_.size(); ++k) {
    IntVec n = universe_.point(k);
    for (auto& c : n) c = -c;
    auto it = index.find(n);
    if (it != index.end()) negation_[k] = it->second;
  }
}

bool GraphEnumerator::connected_without(const std::vector<int>& set, int skip) const {
  const int n = static_cast<int>(set.size());
  uint32_t seen = 0;
  int start = -1;
  for (int k = 0; k < n; ++k)
    if (set[k] != skip) {
      start = k;
      break;
    }
  if (start < 0) return true;
  uint32_t stack = 1u << start;
  seen = stack;
  int count = 0;
  while (stack) {
    const int k = __builtin_ctz(stack);
    stack &= stack - 1;
    ++count;
    for (int j = 0; j < n; ++j) {
      if ((seen >> j) & 1u || set[j] == skip) continue;
      if (universe_.adjacent(set[k], set[j])) {
        seen |= 1u << j;
        stack |= 1u << j;
      }
    }
  }
  const bool skipped = std::find(set.begin(), set.end(), skip) != set.end();
  return count == n - (skipped ? 1 : 0);
}

bool GraphEnumerator::is_child(const std::vector<int>& set, int added) const {
  for (int u : set)
    if (u > added && u != universe_.root() && connected_without(set, u)) return false;
  return true;
}

void GraphEnumerator::children(const std::vector<int>& set, std::vector<std::vector<int>>& out) const {
  std::vector<int> cand;
  for (int s : set)
    for (int w : universe_.neighbours(s))
      if (!std::binary_search(set.begin(), set.end(), w)) cand.push_back(w);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  for (int w : cand) {
    std::vector<int> t = set;
    t.insert(std::upper_bound(t.begin(), t.end(), w), w);
    if (is_child(t, w)) out.push_back(std::move(t));
  }
}

bool GraphEnumerator::reported(const std::vector<int>& set) const {
  std::vector<int> image;
  image.reserve(set.size());
  for (int k : set) {
    if (mass(universe_.point(k)) != 0) return true;
    image.push_back(negation_[k]);
  }
  std::sort(image.begin(), image.end());
  return set <= image;
}

void GraphEnumerator::walk(std::vector<int>& set, const Visitor& visit) const {
  if (reported(set)) visit(set);
  if (static_cast<int>(set.size()) >= limits_.max_vertices) return;
  std::vector<std::vector<int>> next;
  children(set, next);
  for (auto& c : next) walk(c, visit);
}

void GraphEnumerator::for_each(const Visitor& visit) const {
  std::vector<int> start{universe_.root()};
  walk(start, visit);
}

void GraphEnumerator::for_each_below(const std::vector<int>& start, const Visitor& visit) const {
  std::vector<int> s = start;
  walk(s, visit);
}

void GraphEnumerator::split(int depth, std::vector<std::vector<int>>& prefix,
                            std::vector<std::vector<int>>& roots) const {
  std::vector<std::vector<int>> level{{universe_.root()}};
  while (!level.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& s : level) {
      if (static_cast<int>(s.size()) >= depth || static_cast<int>(s.size()) >= limits_.max_vertices) {
        roots.push_back(std::move(s));
        continue;
      }
      if (reported(s)) prefix.push_back(s);
      children(s, next);
    }
    level = std::move(next);
  }
}

ColoredGraph GraphEnumerator::graph(const std::vector<int>& set) const {
  std::vector<IntVec> pts;
  pts.reserve(set.size());
  for (int k : set) pts.push_back(universe_.point(k));
  return complete_closure(pts);
}

std::vector<ColoredGraph> enumerate_graphs(int m, int max_vertices, int coord_bound) {
  GraphEnumerator en({m, max_vertices, coord_bound});
  std::vector<ColoredGraph> out;
  en.for_each([&](const std::vector<int>& s) { out.push_back(en.graph(s)); });
  return out;
}

std::vector<ColoredGraph> enumerate_graphs_bfs(int m, int max_vertices, int coord_bound) {
  if (m < 1 || max_vertices < 1 || coord_bound < 1) throw std::invalid_argument("enumerate_graphs_bfs: bounds");
  const auto gens = generators(m);
  auto in_box = [&](const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [&](int64_t c) { return c >= -coord_bound && c <= coord_bound; });
  };
  std::vector<ColoredGraph> out;
  std::set<CanonicalKey> keys;
  std::set<std::vector<IntVec>> level{{IntVec(static_cast<size_t>(m), 0)}};
  while (!level.empty()) {
    std::set<std::vector<IntVec>> next;
    for (const auto& s : level) {
      ColoredGraph g = complete_closure(s);
      if (keys.insert(canonical_form(g)).second) out.push_back(std::move(g));
      if (static_cast<int>(s.size()) >= max_vertices) continue;
      for (const auto& v : s)
        for (const auto& x : gens) {
          IntVec w = compose(x, colored(v)).coeffs;
          if (!in_box(w) || std::find(s.begin(), s.end(), w) != s.end()) continue;
          std::vector<IntVec> t = s;
          t.push_back(std::move(w));
          std::sort(t.begin(), t.end());
          next.insert(std::move(t));
        }
    }
    level = std::move(next);
  }
  return out;
}

// --- text ------------------------------------------------------------------

std::string format_graph_line(const ColoredGraph& g) {
  std::string out = "vertices: [";
  for (int k = 0; k < g.size(); ++k) {
    if (k) out += ",";
    out += format_vector(g.vertex(k).coeffs);
  }
  return out + "]";
}

ColoredGraph parse_graph_line(std::string_view line) {
  const std::string_view tag = "vertices:";
  size_t pos = line.find_first_not_of(" \t");
  if (pos == std::string_view::npos) throw std::invalid_argument("graph line: empty (column 1)");
  if (line.substr(pos, tag.size()) == tag) pos += tag.size();  // the tag is optional
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line.substr(pos));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("graph line: malformed vertex list (column " + std::to_string(pos + e.byte) + ")");
  }
  if (!j.is_array() || j.empty()) throw std::invalid_argument("graph line: expected a nonempty list of vertices");
  std::vector<IntVec> vs;
  for (const auto& v : j) vs.push_back(v.get<IntVec>());
  return complete_closure(vs);
}

}  // namespace rb
