#include "rb/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <tuple>
#include <unordered_map>

namespace rb {

namespace {

using detail::kFieldBits;
constexpr int kFieldCount = 2 * kMaxVars + 1;
constexpr MonoKey kFieldMask = (MonoKey{1} << kFieldBits) - 1;

constexpr int field_of(VarKind kind, int index) {
  switch (kind) {
    case VarKind::Y:
      return index;
    case VarKind::Xi:
      return kMaxVars + index;
    case VarKind::T:
      return 2 * kMaxVars;
  }
  return 0;
}

inline int field_exp(MonoKey key, int field) {
  return static_cast<int>((key >> (field * kFieldBits)) & kFieldMask);
}

inline MonoKey field_key(int field, int exponent) {
  if (exponent < 0 || exponent > kMaxDegree) throw DegreeOverflow();
  return static_cast<MonoKey>(exponent) << (field * kFieldBits);
}


// Sorts and merges equal keys in place, dropping zeros. Sorting goes through
// a POD (key, index) array so the coefficients are moved only once.
void combine(std::vector<MultiPoly::Term>& terms) {
  if (terms.size() <= 1) {
    if (!terms.empty() && terms[0].coeff.is_zero()) terms.clear();
    return;
  }
  bool sorted = true;
  for (size_t k = 1; k < terms.size() && sorted; ++k) sorted = terms[k - 1].key < terms[k].key;
  if (sorted) {
    std::erase_if(terms, [](const MultiPoly::Term& t) { return t.coeff.is_zero(); });
    return;
  }
  struct Slot {
    MonoKey key;
    uint32_t index;
  };
  std::vector<Slot> slots(terms.size());
  for (size_t k = 0; k < terms.size(); ++k) slots[k] = {terms[k].key, static_cast<uint32_t>(k)};
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    return a.key < b.key || (a.key == b.key && a.index < b.index);
  });
  std::vector<MultiPoly::Term> out;
  out.reserve(terms.size());
  for (size_t k = 0; k < slots.size();) {
    MultiPoly::Term acc = std::move(terms[slots[k].index]);
    size_t l = k + 1;
    while (l < slots.size() && slots[l].key == acc.key) acc.coeff += terms[slots[l++].index].coeff;
    if (!acc.coeff.is_zero()) out.push_back(std::move(acc));
    k = l;
  }
  terms = std::move(out);
}

struct WordOverflow {};

constexpr MonoKey kYMask = (MonoKey{1} << (kMaxVars * kFieldBits)) - 1;
constexpr MonoKey kYLowBits = [] {
  MonoKey mask = 0;
  for (int f = 0; f < kMaxVars; ++f) mask |= MonoKey{1} << (f * kFieldBits);
  return mask;
}();

// Merges equal keys, dropping zeros; throws WordOverflow. Long inputs are
// aggregated in an open-addressing table; the result is sorted by key only
// when `sorted` is set.
void combine_words(std::vector<WordTerm>& acc, bool sorted = true) {
  auto by_key = [](const WordTerm& a, const WordTerm& b) { return a.key < b.key; };
  if (acc.size() >= 24) {
    thread_local std::vector<WordTerm> table;
    thread_local std::vector<uint8_t> used;
    size_t cap = 64;
    while (cap < 2 * acc.size()) cap <<= 1;
    if (table.size() < cap) {
      table.resize(cap);
      used.resize(cap);
    }
    std::fill(used.begin(), used.begin() + static_cast<std::ptrdiff_t>(cap), 0);
    const size_t mask = cap - 1;
    for (const auto& t : acc) {
      const uint64_t h64 = static_cast<uint64_t>(t.key) ^ static_cast<uint64_t>(t.key >> 64) * 0x9e3779b97f4a7c15ull;
      size_t h = static_cast<size_t>((h64 * 0xff51afd7ed558ccdull) >> 20) & mask;
      while (used[h] && table[h].key != t.key) h = (h + 1) & mask;
      if (!used[h]) {
        used[h] = 1;
        table[h] = t;
      } else if (__builtin_add_overflow(table[h].coeff, t.coeff, &table[h].coeff)) {
        throw WordOverflow();
      }
    }
    acc.clear();
    for (size_t h = 0; h < cap; ++h)
      if (used[h] && table[h].coeff != 0) acc.push_back(table[h]);
    if (sorted) std::sort(acc.begin(), acc.end(), by_key);
    return;
  }
  std::sort(acc.begin(), acc.end(), by_key);
  size_t out = 0;
  for (size_t k = 0; k < acc.size();) {
    WordTerm t = acc[k];
    size_t l = k + 1;
    for (; l < acc.size() && acc[l].key == t.key; ++l)
      if (__builtin_add_overflow(t.coeff, acc[l].coeff, &t.coeff)) throw WordOverflow();
    if (t.coeff != 0) acc[out++] = t;
    k = l;
  }
  acc.resize(out);
}

Integer ipow(const Integer& base, int e) {
  Integer r(1);
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

int mono_exponent(MonoKey key, VarKind kind, int index) { return field_exp(key, field_of(kind, index)); }

MonoKey mono_key(VarKind kind, int index, int exponent) {
  if (kind != VarKind::T && (index < 0 || index >= kMaxVars)) throw std::out_of_range("variable index");
  return field_key(field_of(kind, index), exponent);
}

void MultiPoly::check_m(int m) {
  if (m < 0 || m > kMaxVars) throw std::invalid_argument("MultiPoly: number of variables out of range");
}

MultiPoly MultiPoly::monomial(int m, MonoKey key, const Integer& c) {
  MultiPoly p(m);
  if (!c.is_zero()) p.terms_.push_back({key, c});
  return p;
}

MultiPoly MultiPoly::constant(int m, const Integer& c) { return monomial(m, 0, c); }
MultiPoly MultiPoly::t(int m) { return monomial(m, mono_key(VarKind::T, 0, 1), 1); }

MultiPoly MultiPoly::xi(int m, int i) {
  if (i < 0 || i >= m) throw std::out_of_range("xi index");
  return monomial(m, mono_key(VarKind::Xi, i, 1), 1);
}

MultiPoly MultiPoly::y(int m, int i) {
  if (i < 0 || i >= m) throw std::out_of_range("y index");
  return monomial(m, mono_key(VarKind::Y, i, 1), 1);
}

MultiPoly MultiPoly::linear_xi(int m, std::span<const int64_t> a) {
  if (static_cast<int>(a.size()) != m) throw std::invalid_argument("linear_xi: dimension mismatch");
  MultiPoly p(m);
  for (int i = 0; i < m; ++i)
    if (a[i] != 0) p.terms_.push_back({mono_key(VarKind::Xi, i, 1), Integer(a[i])});
  p.normalize();
  return p;
}

void MultiPoly::normalize() { combine(terms_); }

std::vector<MultiPoly::Term> MultiPoly::merge(const std::vector<Term>& a, const std::vector<Term>& b,
                                              bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].key < b[j].key)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].key < a[i].key) {
      out.push_back({b[j].key, subtract ? -b[j].coeff : b[j].coeff});
      ++j;
    } else {
      Integer c = subtract ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].key, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& term : r.terms_) term.coeff = -term.coeff;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  m_ = std::max(m_, o.m_);
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  m_ = std::max(m_, o.m_);
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

MultiPoly MultiPoly::shifted(MonoKey key, const Integer& c) const {
  MultiPoly r(m_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  // Adding a constant key preserves the order of the keys.
  for (const auto& term : terms_) r.terms_.push_back({mono_mul(term.key, key), term.coeff * c});
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  const MultiPoly& small = a.size() <= b.size() ? a : b;
  const MultiPoly& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) {
    MultiPoly r = large.shifted(small.terms_[0].key, small.terms_[0].coeff);
    r.m_ = std::max(a.m_, b.m_);
    return r;
  }
  MultiPoly r(std::max(a.m_, b.m_));
  auto half_word = [](const MultiPoly& p) {
    for (const auto& t : p.terms_)
      if (!t.coeff.fits_int64() || std::abs(t.coeff.to_int64()) >= (int64_t{1} << 31)) return false;
    return true;
  };
  if (half_word(a) && half_word(b)) {
    try {
      std::vector<WordTerm> acc;
      acc.reserve(a.size() * b.size());
      for (const auto& s : small.terms_)
        for (const auto& l : large.terms_)
          acc.push_back({mono_mul(s.key, l.key), s.coeff.to_int64() * l.coeff.to_int64()});
      combine_words(acc);
      r.terms_.reserve(acc.size());
      for (const auto& t : acc) r.terms_.push_back({t.key, Integer(static_cast<long>(t.coeff))});
      return r;
    } catch (const WordOverflow&) {
      r.terms_.clear();
    }
  }
  r.terms_.reserve(a.size() * b.size());
  for (const auto& s : small.terms_)
    for (const auto& l : large.terms_) r.terms_.push_back({mono_mul(s.key, l.key), s.coeff * l.coeff});
  r.normalize();
  return r;
}

MultiPoly operator*(const Integer& k, const MultiPoly& p) { return p.shifted(0, k); }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t k = 0; k < a.terms_.size(); ++k)
    if (a.terms_[k].key != b.terms_[k].key || !(a.terms_[k].coeff == b.terms_[k].coeff)) return false;
  return true;
}

int MultiPoly::degree(VarKind kind, int index) const {
  if (terms_.empty()) return -1;
  const int f = field_of(kind, index);
  int d = 0;
  for (const auto& term : terms_) d = std::max(d, field_exp(term.key, f));
  return d;
}

bool MultiPoly::has_roots() const {
  for (const auto& term : terms_)
    for (int i = 0; i < kMaxVars; ++i)
      if (field_exp(term.key, i) != 0) return true;
  return false;
}

MultiPoly MultiPoly::coeff_t(int k) const {
  MultiPoly r(m_);
  const int f = field_of(VarKind::T, 0);
  const MonoKey strip = field_key(f, k);
  for (const auto& term : terms_)
    if (field_exp(term.key, f) == k) r.terms_.push_back({term.key - strip, term.coeff});
  return r;  // order preserved
}

bool MultiPoly::is_monic_in_t() const {
  const int d = degree_t();
  if (d < 0) return false;
  MultiPoly lc = coeff_t(d);
  return lc.size() == 1 && lc.terms_[0].key == 0 && lc.terms_[0].coeff.is_one();
}

MultiPoly MultiPoly::eliminate_roots() const {
  constexpr MonoKey y_mask = (MonoKey{1} << (kMaxVars * kFieldBits)) - 1;
  constexpr MonoKey low_bits = [] {
    MonoKey mask = 0;
    for (int f = 0; f < kMaxVars; ++f) mask |= MonoKey{1} << (f * kFieldBits);
    return mask;
  }();
  MultiPoly r(m_);
  r.terms_.reserve(terms_.size());
  bool reordered = false;
  for (const auto& term : terms_) {
    const MonoKey ys = term.key & y_mask;
    if (ys == 0) {
      r.terms_.push_back(term);
      continue;
    }
    if (ys & low_bits) throw OddExponent(term_str(term));
    reordered = true;
    r.terms_.push_back({mono_mul(term.key - ys, (ys >> 1) << (kMaxVars * kFieldBits)), term.coeff});
  }
  if (reordered) r.normalize();
  return r;
}

MultiPoly MultiPoly::specialize(int i, const Integer& value) const {
  if (i < 0 || i >= kMaxVars) throw std::out_of_range("specialize: index");
  const int fx = field_of(VarKind::Xi, i);
  const int fy = field_of(VarKind::Y, i);
  MultiPoly r(m_);
  for (const auto& term : terms_) {
    const int ex = field_exp(term.key, fx);
    const int ey = field_exp(term.key, fy);
    if (value.is_zero()) {
      if (ex == 0 && ey == 0) r.terms_.push_back(term);
      continue;  // filtering keeps the terms sorted
    }
    if (ey != 0) throw std::invalid_argument("specialize: y_i present, only xi_i = 0 is exact");
    r.terms_.push_back({term.key - field_key(fx, ex), term.coeff * ipow(value, ex)});
  }
  if (!value.is_zero()) r.normalize();
  return r;
}

std::vector<Integer> MultiPoly::specialize_all(std::span<const Integer> xi) const {
  if (static_cast<int>(xi.size()) < m_) throw std::invalid_argument("specialize_all: too few values");
  if (has_roots()) throw std::invalid_argument("specialize_all: polynomial still has square roots");
  const int d = std::max(degree_t(), 0);
  std::vector<Integer> out(static_cast<size_t>(d + 1));
  for (const auto& term : terms_) {
    Integer c = term.coeff;
    for (int i = 0; i < kMaxVars; ++i) {
      const int e = field_exp(term.key, field_of(VarKind::Xi, i));
      if (e) c *= ipow(xi[static_cast<size_t>(i)], e);
    }
    out[static_cast<size_t>(mono_exponent(term.key, VarKind::T))] += c;
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

MultiPoly MultiPoly::substitute_t(const MultiPoly& replacement) const {
  const int d = degree_t();
  MultiPoly r(std::max(m_, replacement.m_));
  for (int k = d; k >= 0; --k) r = r * replacement + coeff_t(k);
  return r;
}

namespace {

// Moves the fields [first, last) of a key by `delta` fields (+-1).
MonoKey shift_fields(MonoKey key, int first, int last, int delta) {
  const MonoKey lo = (MonoKey{1} << (first * kFieldBits)) - 1;
  const MonoKey hi_start = MonoKey{1} << (last * kFieldBits);
  const MonoKey middle = key & (hi_start - 1) & ~lo;
  const MonoKey rest = key & ~(middle);
  return rest | (delta > 0 ? middle << kFieldBits : middle >> kFieldBits);
}

}  // namespace

MultiPoly MultiPoly::drop_variable(int i) const {
  if (degree(VarKind::Xi, i) > 0 || degree(VarKind::Y, i) > 0)
    throw std::invalid_argument("drop_variable: variable still present");
  MultiPoly r(std::max(m_ - 1, 0));
  r.terms_.reserve(terms_.size());
  for (const auto& term : terms_) {
    MonoKey key = shift_fields(term.key, i + 1, kMaxVars, -1);
    key = shift_fields(key, kMaxVars + i + 1, 2 * kMaxVars, -1);
    r.terms_.push_back({key, term.coeff});
  }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::insert_variable(int i) const {
  if (m_ >= kMaxVars) throw std::invalid_argument("insert_variable: too many variables");
  if (degree(VarKind::Xi, kMaxVars - 1) > 0 || degree(VarKind::Y, kMaxVars - 1) > 0)
    throw std::invalid_argument("insert_variable: overflow");
  MultiPoly r(m_ + 1);
  r.terms_.reserve(terms_.size());
  for (const auto& term : terms_) {
    MonoKey key = shift_fields(term.key, kMaxVars + i, 2 * kMaxVars - 1, +1);
    key = shift_fields(key, i, kMaxVars - 1, +1);
    r.terms_.push_back({key, term.coeff});
  }
  r.normalize();
  return r;
}

bool MultiPoly::divide_monic_t(const MultiPoly& divisor, MultiPoly& quotient) const {
  if (!divisor.is_monic_in_t()) throw std::invalid_argument("divide_monic_t: divisor not monic in t");
  const int d = divisor.degree_t();
  MultiPoly rem = *this;
  MultiPoly q(std::max(m_, divisor.m_));
  while (!rem.is_zero() && rem.degree_t() >= d) {
    const int k = rem.degree_t();
    MultiPoly lead = rem.coeff_t(k).shifted(mono_key(VarKind::T, 0, k - d), 1);
    q += lead;
    rem -= lead * divisor;
  }
  quotient = std::move(q);
  return rem.is_zero();
}

std::complex<double> MultiPoly::eval(std::span<const double> xi, std::complex<double> t) const {
  for (int i = 0; i < m_; ++i)
    if (!(xi[static_cast<size_t>(i)] > 0)) throw NonPositiveXi();
  std::complex<double> acc = 0;
  for (const auto& term : terms_) {
    std::complex<double> v = term.coeff.to_double();
    for (int i = 0; i < m_; ++i) {
      const int ex = mono_exponent(term.key, VarKind::Xi, i);
      const int ey = mono_exponent(term.key, VarKind::Y, i);
      if (ex) v *= std::pow(xi[static_cast<size_t>(i)], ex);
      if (ey) v *= std::pow(std::sqrt(xi[static_cast<size_t>(i)]), ey);
    }
    const int et = mono_exponent(term.key, VarKind::T);
    if (et) v *= std::pow(t, et);
    acc += v;
  }
  return acc;
}

double MultiPoly::eval_abs(std::span<const double> xi, double abs_t) const {
  double acc = 0;
  for (const auto& term : terms_) {
    double v = std::abs(term.coeff.to_double());
    for (int i = 0; i < m_; ++i) {
      const double x = std::abs(xi[static_cast<size_t>(i)]);
      v *= std::pow(x, mono_exponent(term.key, VarKind::Xi, i) + 0.5 * mono_exponent(term.key, VarKind::Y, i));
    }
    v *= std::pow(abs_t, mono_exponent(term.key, VarKind::T));
    acc += v;
  }
  return acc;
}

// --- text ------------------------------------------------------------------

std::string MultiPoly::term_str(const Term& term) const {
  std::string mono;
  auto put = [&](const std::string& name, int e) {
    if (e == 0) return;
    if (!mono.empty()) mono += "*";
    mono += name;
    if (e > 1) mono += "^" + std::to_string(e);
  };
  for (int i = 0; i < kMaxVars; ++i) put("x" + std::to_string(i + 1), mono_exponent(term.key, VarKind::Xi, i));
  for (int i = 0; i < kMaxVars; ++i) put("y" + std::to_string(i + 1), mono_exponent(term.key, VarKind::Y, i));
  put("t", mono_exponent(term.key, VarKind::T));
  if (mono.empty()) return term.coeff.str();
  if (term.coeff.is_one()) return mono;
  if (term.coeff == Integer(-1)) return "-" + mono;
  return term.coeff.str() + "*" + mono;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  // Descending total degree, then descending lexicographic in (t, x.., y..).
  auto sort_key = [](MonoKey key) {
    std::vector<int> v;
    int total = 0;
    v.push_back(mono_exponent(key, VarKind::T));
    for (int i = 0; i < kMaxVars; ++i) v.push_back(mono_exponent(key, VarKind::Xi, i));
    for (int i = 0; i < kMaxVars; ++i) v.push_back(mono_exponent(key, VarKind::Y, i));
    for (int e : v) total += e;
    v.insert(v.begin(), total);
    return v;
  };
  std::vector<const Term*> order;
  for (const auto& term : terms_) order.push_back(&term);
  std::sort(order.begin(), order.end(),
            [&](const Term* a, const Term* b) { return sort_key(a->key) > sort_key(b->key); });
  std::string out;
  for (size_t k = 0; k < order.size(); ++k) {
    std::string s = term_str(*order[k]);
    if (k == 0) {
      out = s;
    } else if (s[0] == '-') {
      out += " - " + s.substr(1);
    } else {
      out += " + " + s;
    }
  }
  return out;
}

MultiPoly MultiPoly::parse(std::string_view text, int m) {
  size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("polynomial parse error: " + what + " at column " + std::to_string(pos + 1));
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_uint = [&]() -> std::string {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return std::string(text.substr(start, pos - start));
  };
  std::vector<Term> terms;
  int max_index = 0;
  skip();
  if (pos == text.size()) fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Integer coeff(sign);
    MonoKey key = 0;
    bool need_factor = true;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff *= Integer::parse(read_uint());
      skip();
      need_factor = false;
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        need_factor = true;
      }
    }
    while (need_factor) {
      skip();
      if (pos >= text.size()) fail("expected variable");
      VarKind kind;
      int index = 0;
      const char c = text[pos++];
      if (c == 't') {
        kind = VarKind::T;
      } else if (c == 'x' || c == 'y') {
        kind = c == 'x' ? VarKind::Xi : VarKind::Y;
        index = std::stoi(read_uint()) - 1;
        if (index < 0 || index >= kMaxVars) fail("variable index out of range");
        max_index = std::max(max_index, index + 1);
      } else {
        --pos;
        fail("unexpected character");
      }
      int e = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        e = std::stoi(read_uint());
      }
      key = mono_mul(key, mono_key(kind, index, e));
      skip();
      need_factor = pos < text.size() && text[pos] == '*';
      if (need_factor) ++pos;
    }
    terms.push_back({key, coeff});
  }
  if (m >= 0 && max_index > m) throw std::invalid_argument("polynomial uses variables beyond m");
  MultiPoly p(m >= 0 ? m : max_index);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

// --- matrices --------------------------------------------------------------

PolyMatrix::PolyMatrix(int n, int m) : n_(n), m_(m), data_(static_cast<size_t>(n * n), MultiPoly(m)) {
  if (n < 0) throw std::invalid_argument("PolyMatrix: negative order");
}

namespace {

class LaplaceExpansion {
 public:
  explicit LaplaceExpansion(const PolyMatrix& mat) : mat_(mat), n_(mat.order()) {
    if (n_ > 30) throw std::invalid_argument("determinant: matrix too large for subset expansion");
  }

  // Determinant of rows [n - |S|, n) restricted to the columns in S.
  const std::vector<MultiPoly::Term>& minor(uint32_t cols) {
    auto it = memo_.find(cols);
    if (it != memo_.end()) return it->second;
    std::vector<MultiPoly::Term> acc;
    const int size = __builtin_popcount(cols);
    if (size == 0) {
      acc.push_back({0, Integer(1)});
    } else {
      const int row = n_ - size;
      int position = 0;
      for (int col = 0; col < n_; ++col) {
        if (!(cols & (1u << col))) continue;
        const bool negate = position++ % 2 == 1;
        const MultiPoly& entry = mat_.at(row, col);
        if (entry.is_zero()) continue;
        const auto& sub = minor(cols & ~(1u << col));
        for (const auto& e : entry.terms()) {
          const Integer c = negate ? -e.coeff : e.coeff;
          for (const auto& s : sub) acc.push_back({mono_mul(e.key, s.key), c * s.coeff});
        }
      }
      combine(acc);
    }
    return memo_.emplace(cols, std::move(acc)).first->second;
  }

 private:
  const PolyMatrix& mat_;
  int n_;
  std::unordered_map<uint32_t, std::vector<MultiPoly::Term>> memo_;
};

}  // namespace

namespace {

// The subset expansion with int64 coefficients. Minors live in one arena,
// addressed by column mask; each recursion depth has its own scratch buffer.
class WordLaplace {
 public:
  explicit WordLaplace(const WordMatrix& mat)
      : mat_(mat), n_(mat.order()), start_(size_t{1} << n_, -1), length_(size_t{1} << n_, 0),
        scratch_(static_cast<size_t>(n_ + 1)) {}

  std::pair<const WordTerm*, size_t> minor(uint32_t cols) {
    if (start_[cols] < 0) compute(cols);
    return {arena_.data() + start_[cols], length_[cols]};
  }

 private:
  void compute(uint32_t cols) {
    const int size = __builtin_popcount(cols);
    auto& acc = scratch_[static_cast<size_t>(size)];
    acc.clear();
    if (size == 0) {
      acc.push_back({0, 1});
    } else {
      const int row = n_ - size;
      int position = 0;
      for (int col = 0; col < n_; ++col) {
        if (!(cols & (1u << col))) continue;
        const bool negate = position++ % 2 == 1;
        const auto& entry = mat_.cell(row, col);
        if (entry.empty()) continue;
        const uint32_t rest = cols & ~(1u << col);
        if (start_[rest] < 0) compute(rest);
        const WordTerm* sub = arena_.data() + start_[rest];
        const size_t len = length_[rest];
        for (const auto& e : entry) {
          int64_t c = e.coeff;
          if (negate && __builtin_sub_overflow(int64_t{0}, c, &c)) throw WordOverflow();
          for (size_t k = 0; k < len; ++k) {
            int64_t prod;
            if (__builtin_mul_overflow(c, sub[k].coeff, &prod)) throw WordOverflow();
            acc.push_back({mono_mul(e.key, sub[k].key), prod});
          }
        }
      }
      combine_words(acc, false);
    }
    start_[cols] = static_cast<int64_t>(arena_.size());
    length_[cols] = acc.size();
    arena_.insert(arena_.end(), acc.begin(), acc.end());
  }

  const WordMatrix& mat_;
  int n_;
  std::vector<int64_t> start_;
  std::vector<size_t> length_;
  std::vector<WordTerm> arena_;
  std::vector<std::vector<WordTerm>> scratch_;
};

WordMatrix to_words(const PolyMatrix& mat) {
  WordMatrix w(mat.order(), mat.nvars());
  for (int r = 0; r < mat.order(); ++r)
    for (int c = 0; c < mat.order(); ++c)
      for (const auto& t : mat.at(r, c).terms()) {
        if (!t.coeff.fits_int64()) throw WordOverflow();
        w.add(r, c, t.key, t.coeff.to_int64());
      }
  return w;
}

}  // namespace

std::optional<MultiPoly> word_determinant(const WordMatrix& mat, bool eliminate_roots) {
  const int n = mat.order();
  if (n > 16) return std::nullopt;
  try {
    WordLaplace expansion(mat);
    auto [terms, len] = expansion.minor(n == 0 ? 0u : (1u << n) - 1u);
    std::vector<WordTerm> words(terms, terms + len);
    MultiPoly r(mat.nvars());
    if (eliminate_roots) {
      bool moved = false;
      for (auto& t : words) {
        const MonoKey ys = t.key & kYMask;
        if (ys == 0) continue;
        if (ys & kYLowBits) throw OddExponent(r.term_str({t.key, Integer(static_cast<long>(t.coeff))}));
        t.key = mono_mul(t.key - ys, (ys >> 1) << (kMaxVars * kFieldBits));
        moved = true;
      }
      if (moved) combine_words(words, false);
    }
    std::sort(words.begin(), words.end(), [](const WordTerm& a, const WordTerm& b) { return a.key < b.key; });
    r.terms_.reserve(words.size());
    for (const auto& t : words) r.terms_.push_back({t.key, Integer(static_cast<long>(t.coeff))});
    return r;
  } catch (const WordOverflow&) {
    return std::nullopt;
  }
}

MultiPoly determinant(const PolyMatrix& mat) {
  const int n = mat.order();
  if (n <= 16) {
    try {
      if (auto fast = word_determinant(to_words(mat))) return std::move(*fast);
    } catch (const WordOverflow&) {
    }
  }
  MultiPoly r(mat.nvars());
  LaplaceExpansion expansion(mat);
  r.terms_ = expansion.minor((1u << n) - 1u);
  return r;
}

MultiPoly charpoly(const PolyMatrix& mat) {
  const int n = mat.order();
  PolyMatrix shifted(n, mat.nvars());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) shifted.at(r, c) = -mat.at(r, c);
  for (int k = 0; k < n; ++k) shifted.at(k, k) += MultiPoly::t(mat.nvars());
  return determinant(shifted);
}

}  // namespace rb
