#include "rb/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace rb {

bool DenseMatrix::symmetric() const {
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      if (at(r, c) != at(c, r)) return false;
  return true;
}

namespace {

// Diagonal similarity by powers of two so that row and column norms are
// comparable.
void balance(DenseMatrix& m) {
  const double radix = 2.0, sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < m.n; ++i) {
      double r = 0, c = 0;
      for (int j = 0; j < m.n; ++j)
        if (j != i) {
          c += std::abs(m.at(j, i));
          r += std::abs(m.at(i, j));
        }
      if (c == 0 || r == 0) continue;
      double g = r / radix, f = 1;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        for (int j = 0; j < m.n; ++j) m.at(i, j) /= f;
        for (int j = 0; j < m.n; ++j) m.at(j, i) *= f;
      }
    }
  }
}

// Upper Hessenberg form by stabilized elementary similarity transforms.
void hessenberg(DenseMatrix& a) {
  const int n = a.n;
  for (int m = 1; m < n - 1; ++m) {
    double x = 0;
    int piv = m;
    for (int j = m; j < n; ++j)
      if (std::abs(a.at(j, m - 1)) > std::abs(x)) {
        x = a.at(j, m - 1);
        piv = j;
      }
    if (piv != m) {
      for (int j = m - 1; j < n; ++j) std::swap(a.at(piv, j), a.at(m, j));
      for (int j = 0; j < n; ++j) std::swap(a.at(j, piv), a.at(j, m));
    }
    if (x == 0) continue;
    for (int i = m + 1; i < n; ++i) {
      double y = a.at(i, m - 1);
      if (y == 0) continue;
      y /= x;
      a.at(i, m - 1) = 0;
      for (int j = m; j < n; ++j) a.at(i, j) -= y * a.at(m, j);
      for (int j = 0; j < n; ++j) a.at(j, m) += y * a.at(j, i);
    }
  }
  for (int r = 2; r < n; ++r)
    for (int c = 0; c < r - 1; ++c) a.at(r, c) = 0;
}

double sign_of(double a, double b) { return b >= 0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix.
std::vector<Complex> hessenberg_qr(DenseMatrix& a) {
  const int n = a.n;
  std::vector<Complex> w(static_cast<size_t>(n));
  double anorm = 0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a.at(i, j));
  int nn = n - 1;
  double shift = 0;
  while (nn >= 0) {
    int its = 0, l;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(a.at(l - 1, l - 1)) + std::abs(a.at(l, l));
        if (s == 0) s = anorm;
        if (std::abs(a.at(l, l - 1)) + s == s) {
          a.at(l, l - 1) = 0;
          break;
        }
      }
      double x = a.at(nn, nn);
      if (l == nn) {
        w[static_cast<size_t>(nn--)] = x + shift;
        continue;
      }
      double y = a.at(nn - 1, nn - 1);
      double ww = a.at(nn, nn - 1) * a.at(nn - 1, nn);
      if (l == nn - 1) {
        const double p = 0.5 * (y - x), q = p * p + ww;
        double z = std::sqrt(std::abs(q));
        x += shift;
        if (q >= 0) {
          z = p + sign_of(z, p);
          w[static_cast<size_t>(nn - 1)] = w[static_cast<size_t>(nn)] = x + z;
          if (z != 0) w[static_cast<size_t>(nn)] = x - ww / z;
        } else {
          w[static_cast<size_t>(nn - 1)] = Complex(x + p, z);
          w[static_cast<size_t>(nn)] = Complex(x + p, -z);
        }
        nn -= 2;
        continue;
      }
      if (its == 30 * std::max(10, n)) throw std::runtime_error("eigenvalues: QR iteration did not converge");
      if (its > 0 && its % 10 == 0) {
        // Exceptional shift, alternating between the bottom and the top of
        // the active block; plain double shifts can cycle, e.g. on two
        // complex pairs with equal imaginary parts.
        shift += x;
        for (int i = 0; i <= nn; ++i) a.at(i, i) -= x;
        const double s = (its / 10) % 2 ? std::abs(a.at(nn, nn - 1)) + std::abs(a.at(nn - 1, nn - 2))
                                        : std::abs(a.at(l + 1, l)) + std::abs(a.at(l + 2, l + 1));
        y = x = 0.75 * s;
        ww = -0.4375 * s * s;
      }
      ++its;
      int m;
      double p = 0, q = 0, r = 0, z;
      for (m = nn - 2; m >= l; --m) {
        z = a.at(m, m);
        r = x - z;
        double s = y - z;
        p = (r * s - ww) / a.at(m + 1, m) + a.at(m, m + 1);
        q = a.at(m + 1, m + 1) - z - r - s;
        r = a.at(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(a.at(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(a.at(m - 1, m - 1)) + std::abs(z) + std::abs(a.at(m + 1, m + 1)));
        if (u + v == v) break;
      }
      for (int i = m; i < nn - 1; ++i) {
        a.at(i + 2, i) = 0;
        if (i != m) a.at(i + 2, i - 1) = 0;
      }
      for (int k = m; k < nn; ++k) {
        if (k != m) {
          p = a.at(k, k - 1);
          q = a.at(k + 1, k - 1);
          r = k + 1 != nn ? a.at(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0) continue;
        if (k == m) {
          if (l != m) a.at(k, k - 1) = -a.at(k, k - 1);
        } else {
          a.at(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          p = a.at(k, j) + q * a.at(k + 1, j);
          if (k + 1 != nn) {
            p += r * a.at(k + 2, j);
            a.at(k + 2, j) -= p * z;
          }
          a.at(k + 1, j) -= p * y;
          a.at(k, j) -= p * x;
        }
        const int mmin = std::min(nn, k + 3);
        for (int i = l; i <= mmin; ++i) {
          p = x * a.at(i, k) + y * a.at(i, k + 1);
          if (k + 1 != nn) {
            p += z * a.at(i, k + 2);
            a.at(i, k + 2) -= p * r;
          }
          a.at(i, k + 1) -= p * q;
          a.at(i, k) -= p;
        }
      }
    } while (l + 1 < nn);
  }
  return w;
}

bool complex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<Complex> eigenvalues_general(DenseMatrix m) {
  if (m.n == 0) return {};
  balance(m);
  hessenberg(m);
  auto w = hessenberg_qr(m);
  std::sort(w.begin(), w.end(), complex_less);
  return w;
}

// Cyclic Jacobi rotations.
std::vector<double> eigenvalues_symmetric(DenseMatrix a) {
  const int n = a.n;
  if (!a.symmetric()) throw std::invalid_argument("eigenvalues_symmetric: matrix is not symmetric");
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0, diag = 0;
    for (int r = 0; r < n; ++r) {
      diag += a.at(r, r) * a.at(r, r);
      for (int c = r + 1; c < n; ++c) off += a.at(r, c) * a.at(r, c);
    }
    if (off <= 1e-30 * (diag + off) || off == 0) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (apq == 0) continue;
        const double theta = (a.at(q, q) - a.at(p, p)) / (2 * apq);
        const double t = sign_of(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> w(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<size_t>(k)] = a.at(k, k);
  std::sort(w.begin(), w.end());
  return w;
}

DenseMatrix numeric_matrix(const BlockMatrix& mat, std::span<const double> xi) {
  for (double x : xi)
    if (!(x > 0)) throw NonPositiveXi();
  DenseMatrix out(mat.size());
  for (int r = 0; r < mat.size(); ++r)
    for (int c = 0; c < mat.size(); ++c) {
      const MultiPoly& e = mat.entries.at(r, c);
      out.at(r, c) = e.is_zero() ? 0.0 : e.eval(xi, 0.0).real();
    }
  return out;
}

bool is_real_eigenvalue(Complex lambda) { return std::abs(lambda.imag()) <= 1e-8 * (1 + std::abs(lambda)); }

SpectrumReport eigenvalues_at(const BlockMatrix& mat, const MultiPoly& chi, std::span<const double> xi,
                              const SpectrumOptions& opts) {
  const DenseMatrix num = numeric_matrix(mat, xi);
  SpectrumReport rep;
  rep.xi.assign(xi.begin(), xi.end());
  if (num.symmetric()) {
    for (double v : eigenvalues_symmetric(num)) rep.eigenvalues.emplace_back(v, 0.0);
  } else {
    rep.eigenvalues = eigenvalues_general(num);
  }
  for (Complex& l : rep.eigenvalues)
    if (is_real_eigenvalue(l)) l = Complex(l.real(), 0.0);
  rep.min_gap = std::numeric_limits<double>::infinity();
  // Residuals are measured at the scale of the spectral radius, so that an
  // eigenvalue near 0 is not compared against a vanishing scale.
  double radius = 0;
  for (const Complex& l : rep.eigenvalues) radius = std::max(radius, std::abs(l));
  for (size_t i = 0; i < rep.eigenvalues.size(); ++i) {
    const Complex l = rep.eigenvalues[i];
    rep.n_real += l.imag() == 0.0;
    for (size_t j = i + 1; j < rep.eigenvalues.size(); ++j)
      rep.min_gap = std::min(rep.min_gap, std::abs(l - rep.eigenvalues[j]));
    const double res = std::abs(chi.eval(xi, l)) / (chi.eval_abs(xi, std::max(std::abs(l), radius)) + 1e-300);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  rep.distinct = rep.min_gap > opts.distinct_tol;
  if (rep.max_residual > opts.residual_tol)
    throw std::runtime_error("eigenvalues_at: eigenvalue is not a root of the charpoly (residual " +
                             std::to_string(rep.max_residual) + ")");
  return rep;
}

SpectrumReport eigenvalues_at(const ColoredGraph& g, std::span<const double> xi, const SpectrumOptions& opts) {
  const BlockMatrix mat = build_matrix(g);
  SpectrumReport rep = eigenvalues_at(mat, charpoly_block(mat), xi, opts);
  rep.graph_id = format_graph_line(g);
  return rep;
}

bool spectra_match(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const Complex& x : a) {
    size_t best = b.size();
    double dist = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(x - b[j]) < dist) {
        dist = std::abs(x - b[j]);
        best = j;
      }
    if (dist > tol * (1 + std::abs(x))) return false;
    used[best] = true;
  }
  return true;
}

bool homogeneity_check(const ColoredGraph& g, std::span<const double> xi, double lambda, double tol) {
  if (!(lambda > 0)) throw std::invalid_argument("homogeneity_check: lambda must be positive");
  const BlockMatrix mat = build_matrix(g);
  const MultiPoly chi = charpoly_block(mat);
  std::vector<double> scaled(xi.begin(), xi.end());
  for (double& x : scaled) x *= lambda;
  auto base = eigenvalues_at(mat, chi, xi).eigenvalues;
  for (Complex& l : base) l *= lambda;
  return spectra_match(base, eigenvalues_at(mat, chi, scaled).eigenvalues, tol);
}

double real_margin(const SpectrumReport& r) {
  double worst_imag = 0;
  for (const Complex& l : r.eigenvalues) worst_imag = std::max(worst_imag, std::abs(l.imag()));
  if (worst_imag > 0) return -worst_imag;
  return r.min_gap;
}

std::vector<double> simplex_point(int m, int64_t index) {
  if (m < 1) throw std::invalid_argument("simplex_point: m must be positive");
  const int d = m - 1;
  if (d == 0) return {1.0};
  // phi_d: positive root of x^(d+1) = x + 1.
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1 + phi, 1.0 / (d + 1));
  std::vector<double> u(static_cast<size_t>(d));
  double alpha = 1;
  for (int k = 0; k < d; ++k) {
    alpha /= phi;
    const double v = 0.5 + static_cast<double>(index + 1) * alpha;
    u[static_cast<size_t>(k)] = v - std::floor(v);
  }
  std::sort(u.begin(), u.end());
  std::vector<double> xi(static_cast<size_t>(m));
  double prev = 0;
  for (int k = 0; k < d; ++k) {
    xi[static_cast<size_t>(k)] = u[static_cast<size_t>(k)] - prev;
    prev = u[static_cast<size_t>(k)];
  }
  xi[static_cast<size_t>(d)] = 1 - prev;
  double total = 0;
  for (double& x : xi) total += (x = std::max(x, 1e-12));
  for (double& x : xi) x /= total;
  return xi;
}

EllipticReport search_elliptic(const std::vector<ColoredGraph>& gs, int m, const EllipticOptions& opts) {
  for (const auto& g : gs)
    if (g.m() != m) throw std::invalid_argument("search_elliptic: graph of wrong m");
  std::vector<BlockMatrix> mats;
  std::vector<MultiPoly> chis;
  for (const auto& g : gs) {
    mats.push_back(build_matrix(g));
    chis.push_back(charpoly_block(mats.back()));
  }
  const int64_t samples = opts.samples;
  std::vector<double> margin(static_cast<size_t>(samples));
  auto evaluate = [&](int64_t s) {
    const auto xi = simplex_point(m, s);
    double worst = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < mats.size(); ++k) worst = std::min(worst, real_margin(eigenvalues_at(mats[k], chis[k], xi)));
    margin[static_cast<size_t>(s)] = worst;
  };
  if (opts.threads == 1) {
    for (int64_t s = 0; s < samples; ++s) evaluate(s);
  } else {
    const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (int64_t s = 0; s < samples; ++s) evaluate(s);
  }
  EllipticReport rep;
  rep.n_samples = samples;
  int64_t best = -1;
  for (int64_t s = 0; s < samples; ++s) {
    const double v = margin[static_cast<size_t>(s)];
    rep.n_good += v >= opts.margin;
    if (best < 0 || v > margin[static_cast<size_t>(best)]) best = s;
  }
  if (best < 0) return rep;
  rep.point = simplex_point(m, best);
  rep.margin = margin[static_cast<size_t>(best)];
  rep.found = rep.margin >= opts.margin;
  for (size_t k = 0; k < mats.size(); ++k) rep.graph_margins.push_back(real_margin(eigenvalues_at(mats[k], chis[k], rep.point)));
  return rep;
}

std::string QuadraticRegion::str() const {
  std::ostringstream os;
  os << "discriminant " << a << "*x1^2 + " << b << "*x1*x2 + " << c << "*x2^2";
  if (has_complex_interval) os << "; complex for " << lo << " < x1/x2 < " << hi;
  return os.str();
}

QuadraticRegion quadratic_block_region(const MultiPoly& chi) {
  if (chi.nvars() != 2 || chi.degree_t() != 2) throw std::invalid_argument("quadratic_block_region: need a quadratic over m = 2");
  const MultiPoly disc = chi.coeff_t(1) * chi.coeff_t(1) - Integer(4) * chi.coeff_t(0);
  auto at = [&](int x1, int x2) {
    const std::vector<Integer> pt{Integer(x1), Integer(x2)};
    const auto v = disc.specialize_all(pt);
    return v.empty() ? Integer(0) : v[0];
  };
  QuadraticRegion out;
  out.a = at(1, 0);
  out.c = at(0, 1);
  out.b = at(1, 1) - out.a - out.c;
  const double a = out.a.to_double(), b = out.b.to_double(), c = out.c.to_double();
  const double d = b * b - 4 * a * c;
  if (a > 0 && d > 0) {
    out.lo = std::max((-b - std::sqrt(d)) / (2 * a), 0.0);
    out.hi = (-b + std::sqrt(d)) / (2 * a);
    out.has_complex_interval = out.hi > 0;
  }
  return out;
}

}  // namespace rb
