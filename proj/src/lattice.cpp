#include "rb/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace rb {

GroupElement compose(const GroupElement& lhs, const GroupElement& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("compose: dimension mismatch");
  GroupElement out;
  out.coeffs.resize(lhs.coeffs.size());
  const int s = lhs.sign();
  for (size_t k = 0; k < lhs.coeffs.size(); ++k) out.coeffs[k] = lhs.coeffs[k] + s * rhs.coeffs[k];
  out.twist = lhs.twist != rhs.twist;
  return out;
}

GroupElement inverse(const GroupElement& e) {
  if (e.twist) return e;  // (a tau)^2 = 1
  GroupElement out = e;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

int64_t mass(const IntVec& a) {
  int64_t s = 0;
  for (int64_t c : a) s += c;
  return s;
}

IntVec unit_vector(int m, int i) {
  IntVec e(static_cast<size_t>(m), 0);
  e.at(static_cast<size_t>(i)) = 1;
  return e;
}

// --- QuadForm -------------------------------------------------------------

bool QuadForm::is_zero() const {
  return cross.empty() && std::all_of(diag.begin(), diag.end(), [](const Integer& c) { return c.is_zero(); });
}

void QuadForm::add_cross(int i, int j, const Integer& c) {
  if (i == j) throw std::invalid_argument("add_cross: i == j");
  if (i > j) std::swap(i, j);
  auto key = std::make_pair(i, j);
  auto it = cross.find(key);
  if (it == cross.end()) {
    if (!c.is_zero()) cross.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) cross.erase(it);
}

QuadForm& QuadForm::operator+=(const QuadForm& o) {
  if (o.dim() != dim()) throw std::invalid_argument("QuadForm: dimension mismatch");
  for (size_t k = 0; k < diag.size(); ++k) diag[k] += o.diag[k];
  for (const auto& [key, c] : o.cross) add_cross(key.first, key.second, c);
  return *this;
}

QuadForm& QuadForm::operator-=(const QuadForm& o) { return *this += Integer(-1) * o; }

QuadForm operator*(const Integer& k, QuadForm q) {
  if (k.is_zero()) return QuadForm(q.dim());
  for (auto& c : q.diag) c *= k;
  for (auto& [key, c] : q.cross) c *= k;
  return q;
}

std::string QuadForm::str() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Integer& c, const std::string& mono) {
    if (c.is_zero()) return;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    Integer a = abs(c);
    if (!a.is_one()) os << a << "*";
    os << mono;
    first = false;
  };
  for (size_t k = 0; k < diag.size(); ++k) emit(diag[k], "e" + std::to_string(k + 1) + "^2");
  for (const auto& [key, c] : cross)
    emit(c, "e" + std::to_string(key.first + 1) + "*e" + std::to_string(key.second + 1));
  return first ? "0" : os.str();
}

QuadForm product(const IntVec& u, const IntVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("product: dimension mismatch");
  const int m = static_cast<int>(u.size());
  QuadForm q(m);
  for (int i = 0; i < m; ++i) {
    q.diag[i] = Integer(u[i]) * Integer(v[i]);
    for (int j = i + 1; j < m; ++j) q.add_cross(i, j, Integer(u[i]) * v[j] + Integer(u[j]) * v[i]);
  }
  return q;
}

QuadForm cmap(const IntVec& a, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("cmap: sign must be +-1");
  const int m = static_cast<int>(a.size());
  QuadForm q(m);
  // a^2 has diag a_i^2 and cross 2 a_i a_j; a^(2) has diag a_i.
  for (int i = 0; i < m; ++i) {
    Integer ai(a[i]);
    q.diag[i] = Integer(sign) * (ai * (ai + 1)).divexact(2);
    for (int j = i + 1; j < m; ++j) q.add_cross(i, j, Integer(sign) * ai * a[j]);
  }
  return q;
}

// --- TangentialSites -------------------------------------------------------

TangentialSites::TangentialSites(int n_dim, std::vector<IntVec> v) : n(n_dim), vectors(std::move(v)) {
  for (const auto& x : vectors)
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("TangentialSites: site of wrong dimension");
  if (!pairwise_distinct()) throw std::invalid_argument("TangentialSites: sites must be pairwise distinct");
}

Integer TangentialSites::dot(int i, int j) const {
  Integer s;
  for (int k = 0; k < n; ++k) s += Integer(vectors[i][k]) * vectors[j][k];
  return s;
}

bool TangentialSites::pairwise_distinct() const {
  for (size_t i = 0; i < vectors.size(); ++i)
    for (size_t j = i + 1; j < vectors.size(); ++j)
      if (vectors[i] == vectors[j]) return false;
  return true;
}

IntVec momentum(const IntVec& a, const TangentialSites& s) {
  if (static_cast<int>(a.size()) != s.m()) throw std::invalid_argument("momentum: dimension mismatch");
  IntVec out(static_cast<size_t>(s.n), 0);
  for (int i = 0; i < s.m(); ++i)
    for (int k = 0; k < s.n; ++k) out[k] += a[i] * s.vectors[i][k];
  return out;
}

Integer momentum(const QuadForm& q, const TangentialSites& s) {
  if (q.dim() != s.m()) throw std::invalid_argument("momentum: dimension mismatch");
  Integer out;
  for (int i = 0; i < q.dim(); ++i)
    if (!q.diag[i].is_zero()) out += q.diag[i] * s.dot(i, i);
  for (const auto& [key, c] : q.cross) out += c * s.dot(key.first, key.second);
  return out;
}

Integer kenergy(const IntVec& a, int sign, const TangentialSites& s) {
  if (static_cast<int>(a.size()) != s.m()) throw std::invalid_argument("kenergy: dimension mismatch");
  Integer total;
  for (int k = 0; k < s.n; ++k) {
    Integer p;
    for (int i = 0; i < s.m(); ++i) p += Integer(a[i]) * s.vectors[i][k];
    total += p * p;
  }
  for (int i = 0; i < s.m(); ++i) total += Integer(a[i]) * s.dot(i, i);
  return (Integer(sign) * total).divexact(2);
}

// --- edges -----------------------------------------------------------------

namespace {

// Returns (i, j) if v == e_i - e_j.
std::optional<std::pair<int, int>> as_black_generator(const IntVec& v) {
  int plus = -1, minus = -1;
  for (int k = 0; k < static_cast<int>(v.size()); ++k) {
    if (v[k] == 0) continue;
    if (v[k] == 1 && plus < 0) {
      plus = k;
    } else if (v[k] == -1 && minus < 0) {
      minus = k;
    } else {
      return std::nullopt;
    }
  }
  if (plus < 0 || minus < 0) return std::nullopt;
  return std::make_pair(plus, minus);
}

// Returns (i, j), i < j, if v == -e_i - e_j.
std::optional<std::pair<int, int>> as_red_generator(const IntVec& v) {
  int first = -1, second = -1;
  for (int k = 0; k < static_cast<int>(v.size()); ++k) {
    if (v[k] == 0) continue;
    if (v[k] != -1) return std::nullopt;
    if (first < 0) {
      first = k;
    } else if (second < 0) {
      second = k;
    } else {
      return std::nullopt;
    }
  }
  if (second < 0) return std::nullopt;
  return std::make_pair(first, second);
}

}  // namespace

std::optional<EdgeLabel> edge_between(const GroupElement& a, const GroupElement& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("edge_between: dimension mismatch");
  IntVec v(a.coeffs.size());
  if (a.twist == b.twist) {
    for (size_t k = 0; k < v.size(); ++k) v[k] = b.coeffs[k] - a.coeffs[k];
    if (auto g = as_black_generator(v))
      return EdgeLabel{EdgeColor::Black, std::min(g->first, g->second), std::max(g->first, g->second)};
    return std::nullopt;
  }
  for (size_t k = 0; k < v.size(); ++k) v[k] = b.coeffs[k] + a.coeffs[k];
  if (auto g = as_red_generator(v)) return EdgeLabel{EdgeColor::Red, g->first, g->second};
  return std::nullopt;
}

GroupElement colored(const IntVec& a) {
  const int64_t eta = mass(a);
  if (eta != 0 && eta != -2)
    throw std::invalid_argument("combinatorial vertex " + format_vector(a) + " has mass outside {0,-2}");
  return GroupElement{a, eta == -2};
}

std::optional<EdgeLabel> edge_between(const IntVec& a, const IntVec& b) {
  return edge_between(colored(a), colored(b));
}

std::vector<GroupElement> generators(int m) {
  std::vector<GroupElement> out;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      IntVec v(static_cast<size_t>(m), 0);
      v[i] = 1;
      v[j] = -1;
      out.push_back({v, false});
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      IntVec v(static_cast<size_t>(m), 0);
      v[i] = -1;
      v[j] = -1;
      out.push_back({v, true});
    }
  return out;
}

// --- text ------------------------------------------------------------------

std::string format_vector(const IntVec& a) {
  std::string s = "[";
  for (size_t k = 0; k < a.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(a[k]);
  }
  return s + "]";
}

std::string format_element(const GroupElement& e) { return format_vector(e.coeffs) + (e.twist ? "t" : ""); }

GroupElement parse_element(std::string_view text) {
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("parse_element: " + what + " at column " + std::to_string(pos + 1) + " in '" +
                                std::string(text) + "'");
  };
  skip();
  if (pos >= text.size() || text[pos] != '[') fail("expected '['");
  ++pos;
  GroupElement e;
  skip();
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
  } else {
    while (true) {
      skip();
      size_t start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start || !std::isdigit(static_cast<unsigned char>(text[pos - 1]))) fail("expected integer");
      e.coeffs.push_back(std::stoll(std::string(text.substr(start, pos - start))));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ']') {
        ++pos;
        break;
      }
      fail("expected ',' or ']'");
    }
  }
  if (pos < text.size() && text[pos] == 't') {
    e.twist = true;
    ++pos;
  }
  skip();
  if (pos != text.size()) fail("trailing characters");
  return e;
}

}  // namespace rb
