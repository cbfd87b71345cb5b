#pragma once

// Exact multivariate polynomials over Z in y_1..y_m (standing for sqrt(xi_i)),
// xi_1..xi_m and t.
//
// A monomial is packed into a 128-bit key with 6 bits per exponent: y_i in
// field i, xi_i in field kMaxVars + i, t in field 2 * kMaxVars. Monomial
// multiplication is key addition. Terms are kept sorted by key with no zero
// coefficients.

#include <complex>
#include <optional>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rb/integer.hpp"

namespace rb {

inline constexpr int kMaxVars = 10;    // largest supported m
inline constexpr int kMaxDegree = 63;  // per-variable exponent bound

using MonoKey = unsigned __int128;

enum class VarKind { Y, Xi, T };

struct OddExponent : std::runtime_error {
  explicit OddExponent(const std::string& term)
      : std::runtime_error("odd square-root exponent in term " + term), term(term) {}
  std::string term;
};

struct NonPositiveXi : std::domain_error {
  NonPositiveXi() : std::domain_error("all xi_i must be strictly positive") {}
};

struct DegreeOverflow : std::overflow_error {
  DegreeOverflow() : std::overflow_error("monomial exponent exceeds 63") {}
};

int mono_exponent(MonoKey key, VarKind kind, int index = 0);
MonoKey mono_key(VarKind kind, int index, int exponent);

namespace detail {
inline constexpr int kFieldBits = 6;
inline constexpr MonoKey kCarryMask = [] {
  MonoKey mask = 0;
  for (int f = 1; f <= 2 * kMaxVars + 1; ++f) mask |= MonoKey{1} << (f * kFieldBits);
  return mask;
}();
}  // namespace detail

// Sum of keys with a per-field overflow check.
inline MonoKey mono_mul(MonoKey a, MonoKey b) {
  const MonoKey sum = a + b;
  if (((a ^ b ^ sum) & detail::kCarryMask) != 0) throw DegreeOverflow();
  return sum;
}

class MultiPoly {
 public:
  struct Term {
    MonoKey key;
    Integer coeff;
  };

  MultiPoly() = default;
  explicit MultiPoly(int m) : m_(m) { check_m(m); }

  static MultiPoly constant(int m, const Integer& c);
  static MultiPoly t(int m);
  static MultiPoly xi(int m, int i);
  static MultiPoly y(int m, int i);
  static MultiPoly monomial(int m, MonoKey key, const Integer& c);
  // Linear form sum_i a_i xi_i.
  static MultiPoly linear_xi(int m, std::span<const int64_t> a);

  // Text form `3*x1*x2 - t^2 + y1*y2`, variables x1..xm, y1..ym, t.
  static MultiPoly parse(std::string_view text, int m = -1);
  std::string str() const;

  int nvars() const { return m_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree(VarKind kind, int index = 0) const;
  int degree_t() const { return degree(VarKind::T); }
  bool has_roots() const;  // any y exponent > 0
  // Coefficient of t^k, a t-free polynomial.
  MultiPoly coeff_t(int k) const;
  bool is_monic_in_t() const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Integer& k, const MultiPoly& p);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly shifted(MonoKey key, const Integer& c) const;  // p * c * mono

  // Asserts every y exponent is even and substitutes y_i^2 -> xi_i.
  MultiPoly eliminate_roots() const;
  // xi_i := value. With value == 0 every term carrying xi_i or y_i vanishes;
  // otherwise y_i must be absent.
  MultiPoly specialize(int i, const Integer& value) const;
  // Integer point for all xi (y must be absent): coefficients of a univariate
  // polynomial in t, lowest degree first.
  std::vector<Integer> specialize_all(std::span<const Integer> xi) const;
  // Substitutes t := replacement (Horner).
  MultiPoly substitute_t(const MultiPoly& replacement) const;
  // Reindexing for projections: drop variable i (must be absent) or insert a
  // fresh variable at position i.
  MultiPoly drop_variable(int i) const;
  MultiPoly insert_variable(int i) const;
  // Exact division by a polynomial monic in t; returns false if not exact.
  bool divide_monic_t(const MultiPoly& divisor, MultiPoly& quotient) const;

  std::complex<double> eval(std::span<const double> xi, std::complex<double> t) const;
  // Evaluation with |coefficients| and |t|, used as a residual scale.
  double eval_abs(std::span<const double> xi, double abs_t) const;

  std::string term_str(const Term& term) const;

 private:
  static void check_m(int m);
  void normalize();  // sort, combine, drop zeros
  static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract);

  int m_ = 0;
  std::vector<Term> terms_;

  friend class PolyMatrix;
  friend MultiPoly determinant(const class PolyMatrix& mat);
  friend std::optional<MultiPoly> word_determinant(const class WordMatrix& mat, bool eliminate_roots);
};

// Dense square matrix of MultiPoly entries.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int n, int m);

  int order() const { return n_; }
  int nvars() const { return m_; }
  MultiPoly& at(int r, int c) { return data_[static_cast<size_t>(r * n_ + c)]; }
  const MultiPoly& at(int r, int c) const { return data_[static_cast<size_t>(r * n_ + c)]; }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<MultiPoly> data_;
};

// Square matrix with machine-word coefficients, the input of the determinant
// fast path.
struct WordTerm {
  MonoKey key;
  int64_t coeff;
};

class WordMatrix {
 public:
  WordMatrix(int n, int m) : n_(n), m_(m), cells_(static_cast<size_t>(n * n)) {}
  int order() const { return n_; }
  int nvars() const { return m_; }
  void add(int r, int c, MonoKey key, int64_t coeff) {
    if (coeff != 0) cells_[static_cast<size_t>(r * n_ + c)].push_back({key, coeff});
  }
  const std::vector<WordTerm>& cell(int r, int c) const { return cells_[static_cast<size_t>(r * n_ + c)]; }

 private:
  int n_;
  int m_;
  std::vector<std::vector<WordTerm>> cells_;
};

// Determinant with int64 coefficients (n <= 16, each cell free of repeated
// monomials); nullopt as soon as a coefficient would overflow. With
// `eliminate_roots` the result goes through the same y_i^2 -> xi_i
// substitution as MultiPoly::eliminate_roots, including the odd-exponent
// check.
std::optional<MultiPoly> word_determinant(const WordMatrix& mat, bool eliminate_roots = false);

// Determinant by Laplace expansion along rows with memoization on column
// subsets; division-free.
MultiPoly determinant(const PolyMatrix& mat);
// det(t Id - mat).
MultiPoly charpoly(const PolyMatrix& mat);

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace rb
