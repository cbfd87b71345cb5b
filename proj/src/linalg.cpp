#include "rb/linalg.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace rb {

QMatrix to_qmatrix(const std::vector<IntVec>& rows) {
  QMatrix a;
  a.reserve(rows.size());
  for (const auto& r : rows) {
    QVec q;
    q.reserve(r.size());
    for (int64_t v : r) q.emplace_back(static_cast<long>(v));
    a.push_back(std::move(q));
  }
  return a;
}

std::vector<int> rref(QMatrix& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int k = r; k < rows; ++k)
      if (sgn(a[k][c]) != 0) {
        sel = k;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[r], a[sel]);
    const mpq_class inv = 1 / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    for (int k = 0; k < rows; ++k) {
      if (k == r || sgn(a[k][c]) == 0) continue;
      const mpq_class f = a[k][c];
      for (int j = c; j < cols; ++j) a[k][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

namespace {

bool fits(__int128 v) { return v >= INT64_MIN && v <= INT64_MAX; }

// Fraction-free row reduction over int64 with rows kept primitive; every
// pivot column is cleared above and below and each pivot is positive.
// nullopt on overflow.
std::optional<std::vector<int>> rref_int(std::vector<IntVec>& a) {
  std::vector<int> pivots;
  if (a.empty()) return pivots;
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int k = r; k < rows; ++k)
      if (a[k][c] != 0) {
        sel = k;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[r], a[sel]);
    if (a[r][c] < 0)
      for (auto& v : a[r]) v = -v;
    const int64_t p = a[r][c];
    for (int k = 0; k < rows; ++k) {
      if (k == r || a[k][c] == 0) continue;
      const int64_t f = a[k][c];
      int64_t g = 0;
      for (int j = 0; j < cols; ++j) {
        const __int128 v = static_cast<__int128>(a[k][j]) * p - static_cast<__int128>(f) * a[r][j];
        if (!fits(v)) return std::nullopt;
        a[k][j] = static_cast<int64_t>(v);
        g = std::gcd(g, a[k][j]);
      }
      if (g > 1)
        for (auto& v : a[k]) v /= g;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<IntVec> columns_as_rows(const std::vector<IntVec>& rows) {
  const size_t k = rows.size(), m = rows[0].size();
  std::vector<IntVec> a(m, IntVec(k));
  for (size_t c = 0; c < k; ++c)
    for (size_t r = 0; r < m; ++r) a[r][c] = rows[c][r];
  return a;
}

}  // namespace

int rank_exact(const std::vector<IntVec>& rows) {
  QMatrix a = to_qmatrix(rows);
  return static_cast<int>(rref(a).size());
}

int rank(const std::vector<IntVec>& rows) {
  std::vector<IntVec> a = rows;
  if (auto p = rref_int(a)) return static_cast<int>(p->size());
  return rank_exact(rows);
}

std::vector<IntVec> integer_relations(const std::vector<IntVec>& rows) {
  if (rows.empty()) return {};
  const int k = static_cast<int>(rows.size());
  if (rows[0].empty()) return integer_relations_exact(rows);
  std::vector<IntVec> a = columns_as_rows(rows);
  const auto pivots = rref_int(a);
  if (!pivots) return integer_relations_exact(rows);
  std::vector<bool> is_pivot(static_cast<size_t>(k), false);
  __int128 l = 1;
  for (size_t r = 0; r < pivots->size(); ++r) {
    is_pivot[(*pivots)[r]] = true;
    const int64_t p = a[r][(*pivots)[r]];
    l = l / std::gcd(static_cast<int64_t>(l), p) * p;
    if (!fits(l)) return integer_relations_exact(rows);
  }
  std::vector<IntVec> out;
  for (int f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    IntVec n(static_cast<size_t>(k), 0);
    n[f] = static_cast<int64_t>(l);
    int64_t g = n[f];
    for (size_t r = 0; r < pivots->size(); ++r) {
      const __int128 v = -static_cast<__int128>(a[r][f]) * (l / a[r][(*pivots)[r]]);
      if (!fits(v)) return integer_relations_exact(rows);
      n[(*pivots)[r]] = static_cast<int64_t>(v);
      g = std::gcd(g, n[(*pivots)[r]]);
    }
    int first_sign = 0;
    for (int64_t v : n)
      if (v != 0) {
        first_sign = v > 0 ? 1 : -1;
        break;
      }
    for (auto& v : n) v = v / g * first_sign;
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<IntVec> integer_relations_exact(const std::vector<IntVec>& rows) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return {};
  const int m = static_cast<int>(rows[0].size());
  // Columns are the given vectors.
  QMatrix a(static_cast<size_t>(m), QVec(static_cast<size_t>(k)));
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < m; ++r) a[r][c] = static_cast<long>(rows[c][r]);
  const std::vector<int> pivots = m > 0 ? rref(a) : std::vector<int>{};
  std::vector<bool> is_pivot(static_cast<size_t>(k), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<IntVec> out;
  for (int f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    QVec n(static_cast<size_t>(k), 0);
    n[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) n[pivots[r]] = -a[r][f];
    mpz_class l = 1;
    for (const auto& v : n) l = lcm(l, v.get_den());
    mpz_class g = 0;
    std::vector<mpz_class> z;
    for (const auto& v : n) {
      z.push_back(v.get_num() * (l / v.get_den()));
      g = gcd(g, z.back());
    }
    IntVec rel;
    int first_sign = 0;
    for (auto& v : z) {
      v /= g;
      if (first_sign == 0) first_sign = sgn(v);
    }
    for (auto& v : z) {
      if (first_sign < 0) v = -v;
      if (!v.fits_slong_p()) throw std::overflow_error("integer_relations: coefficient overflow");
      rel.push_back(v.get_si());
    }
    out.push_back(std::move(rel));
  }
  return out;
}

std::optional<AffineSolution> solve_affine(const QMatrix& a, const QVec& b, int ncols) {
  QMatrix aug;
  for (size_t r = 0; r < a.size(); ++r) {
    QVec row = a[r];
    row.push_back(b[r]);
    aug.push_back(std::move(row));
  }
  AffineSolution sol;
  sol.particular.assign(static_cast<size_t>(ncols), 0);
  std::vector<int> pivots;
  if (!aug.empty()) pivots = rref(aug);
  for (int p : pivots)
    if (p == ncols) return std::nullopt;
  std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
  for (size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    sol.particular[pivots[r]] = aug[r][ncols];
  }
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVec d(static_cast<size_t>(ncols), 0);
    d[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) d[pivots[r]] = -aug[r][f];
    sol.directions.push_back(std::move(d));
  }
  return sol;
}

mpq_class dot(const QVec& a, const QVec& b) {
  mpq_class s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace rb
