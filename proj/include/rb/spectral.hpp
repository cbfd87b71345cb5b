#pragma once

// Numerical spectra of blocks at positive xi: a dense nonsymmetric
// eigenvalue routine (balancing, Hessenberg reduction, Francis double-shift
// QR), a Jacobi routine for symmetric blocks, cross-checks against the exact
// charpoly, and the search for points where every block has a real simple
// spectrum.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rb/blocks.hpp"

namespace rb {

using Complex = std::complex<double>;

// Row-major n x n.
struct DenseMatrix {
  int n = 0;
  std::vector<double> a;

  explicit DenseMatrix(int order = 0) : n(order), a(static_cast<size_t>(order) * order, 0.0) {}
  double& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
  double at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
  bool symmetric() const;
};

// Throws std::runtime_error if the QR iteration does not converge.
std::vector<Complex> eigenvalues_general(DenseMatrix m);
std::vector<double> eigenvalues_symmetric(DenseMatrix m);

// Entries of the block at xi with y_i = sqrt(xi_i). Throws NonPositiveXi.
DenseMatrix numeric_matrix(const BlockMatrix& mat, std::span<const double> xi);

// |Im| <= 1e-8 (1 + |lambda|).
bool is_real_eigenvalue(Complex lambda);

struct SpectrumReport {
  std::vector<double> xi;
  std::vector<Complex> eigenvalues;  // sorted by real part, then imaginary part
  int n_real = 0;
  bool distinct = false;   // every pairwise gap > distinct_tol
  double min_gap = 0;      // smallest pairwise distance (infinity for n = 1)
  double max_residual = 0; // max |chi(lambda)| / |chi|(max(|lambda|, spectral radius))
  std::string graph_id;
};

struct SpectrumOptions {
  double distinct_tol = 1e-6;
  double residual_tol = 1e-6;
};

// Throws NonPositiveXi, or std::runtime_error when an eigenvalue is not a
// root of the exact charpoly to residual_tol.
SpectrumReport eigenvalues_at(const BlockMatrix& mat, const MultiPoly& chi, std::span<const double> xi,
                              const SpectrumOptions& opts = {});
SpectrumReport eigenvalues_at(const ColoredGraph& g, std::span<const double> xi, const SpectrumOptions& opts = {});

// Greedy nearest matching; true when every pair is within tol (1 + |a|).
bool spectra_match(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol);

// spectrum(lambda xi) == lambda spectrum(xi) to tol.
bool homogeneity_check(const ColoredGraph& g, std::span<const double> xi, double lambda, double tol = 1e-8);

// Real simple spectrum: the smallest gap between eigenvalues, or minus the
// largest imaginary part when some eigenvalue is not real. Infinity for a
// single vertex.
double real_margin(const SpectrumReport& r);

// Deterministic low-discrepancy points on the open simplex sum xi_i = 1
// (additive recurrence with the generalized golden ratio, mapped by sorted
// spacings).
std::vector<double> simplex_point(int m, int64_t index);

struct EllipticOptions {
  int samples = 4096;
  double margin = 1e-6;
  int threads = 0;  // 0: OpenMP default, 1: serial reference loop
};

struct EllipticReport {
  bool found = false;
  int64_t n_samples = 0;
  std::vector<double> point;          // best sample
  double margin = 0;                  // min over graphs at `point`
  std::vector<double> graph_margins;  // per graph at `point`
  int64_t n_good = 0;                 // samples with margin >= opts.margin
};

// Scans simplex points; the best sample maximizes the minimal margin (ties
// broken by sample index, so serial and parallel runs agree).
EllipticReport search_elliptic(const std::vector<ColoredGraph>& gs, int m, const EllipticOptions& opts = {});

// For a two-vertex block over m = 2, the discriminant of chi is a binary
// quadratic form A xi1^2 + B xi1 xi2 + C xi2^2; the spectrum is complex for
// positive ratios xi1/xi2 strictly between the roots.
struct QuadraticRegion {
  Integer a, b, c;
  bool has_complex_interval = false;
  double lo = 0, hi = 0;  // complex for lo < xi1/xi2 < hi
  std::string str() const;
};
QuadraticRegion quadratic_block_region(const MultiPoly& chi);

}  // namespace rb
