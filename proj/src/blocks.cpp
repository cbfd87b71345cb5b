#include "rb/blocks.hpp"

namespace rb {

BlockMatrix build_matrix(const ColoredGraph& g) {
  const int n = g.size();
  const int m = g.m();
  BlockMatrix out{g.vertices(), PolyMatrix(n, m)};
  for (int k = 0; k < n; ++k) {
    const GroupElement& v = g.vertex(k);
    MultiPoly diag = MultiPoly::linear_xi(m, v.coeffs);
    out.entries.at(k, k) = v.twist ? diag : -diag;
  }
  for (const auto& e : g.edges()) {
    const MonoKey yy = mono_mul(mono_key(VarKind::Y, e.label.i, 1), mono_key(VarKind::Y, e.label.j, 1));
    const bool tu = g.vertex(e.u).twist;
    if (e.label.color == EdgeColor::Black) {
      const MultiPoly entry = MultiPoly::monomial(m, yy, tu ? -2 : 2);
      out.entries.at(e.u, e.v) = entry;
      out.entries.at(e.v, e.u) = entry;
    } else {
      const int black = tu ? e.v : e.u;
      const int red = tu ? e.u : e.v;
      out.entries.at(black, red) = MultiPoly::monomial(m, yy, -2);
      out.entries.at(red, black) = MultiPoly::monomial(m, yy, 2);
    }
  }
  return out;
}

BlockMatrix translate_block(const BlockMatrix& mat, const IntVec& u, bool twisted) {
  BlockMatrix out = mat;
  const int n = mat.size();
  const MultiPoly shift = MultiPoly::linear_xi(mat.entries.nvars(), u);
  for (int k = 0; k < n; ++k) out.entries.at(k, k) -= shift;
  if (twisted)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out.entries.at(r, c) = -out.entries.at(r, c);
  return out;
}

MultiPoly charpoly_block(const BlockMatrix& mat) { return charpoly(mat.entries).eliminate_roots(); }

namespace {

// t Id - C_A directly in machine words; the entries are those of build_matrix.
WordMatrix shifted_words(const ColoredGraph& g) {
  const int n = g.size();
  const int m = g.m();
  WordMatrix w(n, m);
  const MonoKey t = mono_key(VarKind::T, 0, 1);
  for (int k = 0; k < n; ++k) {
    const GroupElement& v = g.vertex(k);
    w.add(k, k, t, 1);
    // -C_A on the diagonal: +a(xi) untwisted, -a(xi) twisted.
    for (int j = 0; j < m; ++j) w.add(k, k, mono_key(VarKind::Xi, j, 1), v.twist ? -v.coeffs[j] : v.coeffs[j]);
  }
  for (const auto& e : g.edges()) {
    const MonoKey yy = mono_mul(mono_key(VarKind::Y, e.label.i, 1), mono_key(VarKind::Y, e.label.j, 1));
    if (e.label.color == EdgeColor::Black) {
      const int64_t c = g.vertex(e.u).twist ? 2 : -2;
      w.add(e.u, e.v, yy, c);
      w.add(e.v, e.u, yy, c);
    } else {
      const int black = g.vertex(e.u).twist ? e.v : e.u;
      const int red = g.vertex(e.u).twist ? e.u : e.v;
      w.add(black, red, yy, 2);
      w.add(red, black, yy, -2);
    }
  }
  return w;
}

}  // namespace

MultiPoly charpoly_block(const ColoredGraph& g) {
  bool small = true;
  for (const auto& v : g.vertices())
    for (int64_t c : v.coeffs) small = small && c > -(int64_t{1} << 40) && c < (int64_t{1} << 40);
  if (small && g.size() <= 16)
    if (auto fast = word_determinant(shifted_words(g), true)) return std::move(*fast);
  return charpoly_block(build_matrix(g));
}

std::vector<Integer> scalar_energies(const ColoredGraph& g, const TangentialSites& s) {
  std::vector<Integer> out;
  for (const auto& v : g.vertices()) out.push_back(kenergy(v, s));
  return out;
}

std::string dump_matrix(const BlockMatrix& mat) {
  std::string out;
  for (int r = 0; r < mat.size(); ++r) {
    for (int c = 0; c < mat.size(); ++c) {
      if (c) out += " | ";
      out += mat.entries.at(r, c).str();
    }
    out += "\n";
  }
  return out;
}

}  // namespace rb
