#include "rb/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace rb {

namespace {

QVec site(const TangentialSites& s, int i) {
  QVec v;
  for (int64_t c : s.vectors[static_cast<size_t>(i)]) v.emplace_back(static_cast<long>(c));
  return v;
}

QVec sub(const QVec& a, const QVec& b) {
  QVec out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
  return out;
}

QVec add(const QVec& a, const QVec& b) {
  QVec out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

QVec to_q(const IntVec& a) {
  QVec v;
  for (int64_t c : a) v.emplace_back(static_cast<long>(c));
  return v;
}

bool is_site(const QVec& x, const TangentialSites& s) {
  for (int i = 0; i < s.m(); ++i)
    if (x == site(s, i)) return true;
  return false;
}

double norm_inf(const std::vector<double>& v) {
  double m = 0;
  for (double c : v) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

std::vector<GeometricEdge> geometric_edges(const QVec& p, const QVec& q, const TangentialSites& s) {
  std::vector<GeometricEdge> out;
  for (int i = 0; i < s.m(); ++i)
    for (int j = 0; j < s.m(); ++j) {
      if (i == j) continue;
      const QVec vi = site(s, i), vj = site(s, j);
      if (q == add(p, sub(vj, vi)) && dot(sub(p, vi), sub(vi, vj)) == 0) out.push_back({EdgeColor::Black, i, j});
      if (i < j && add(p, q) == add(vi, vj) && dot(sub(p, vi), sub(p, vj)) == 0) out.push_back({EdgeColor::Red, i, j});
    }
  return out;
}

std::optional<GeometricEdge> geometric_edge(const QVec& p, const QVec& q, const TangentialSites& s) {
  auto all = geometric_edges(p, q, s);
  if (all.empty()) return std::nullopt;
  return all.front();
}

RealizationSystem build_system(const ColoredGraph& g, const TangentialSites& s) {
  if (g.m() != s.m()) throw std::invalid_argument("build_system: graph and sites have different m");
  RealizationSystem sys;
  sys.sites = s;
  sys.vertices = g.vertices();
  for (int k = 1; k < g.size(); ++k) {
    const auto& h = g.vertex(k);
    sys.equations.push_back({k, momentum(h.coeffs, s), kenergy(h, s), h.twist});
  }
  return sys;
}

QVec act(const GroupElement& h, const QVec& x, const TangentialSites& s) {
  const IntVec p = momentum(h.coeffs, s);
  QVec out(x.size());
  for (size_t k = 0; k < x.size(); ++k) out[k] = (h.twist ? -x[k] : x[k]) - static_cast<long>(p[k]);
  return out;
}

std::string to_string(RealizationClass c) {
  switch (c) {
    case RealizationClass::GenericSolutions:
      return "generic_solutions";
    case RealizationClass::OnlyInS:
      return "only_in_S";
    case RealizationClass::OnlyComplex:
      return "only_complex";
    case RealizationClass::EmptyReal:
      return "empty_real";
    case RealizationClass::Inconsistent:
      return "inconsistent";
  }
  return "?";
}

namespace {

// Largest relative residual of the equations at a floating point.
double residual_at(const RealizationSystem& sys, const std::vector<double>& x) {
  double worst = 0;
  double xx = 0;
  for (double c : x) xx += c * c;
  for (const auto& e : sys.equations) {
    double lin = 0, scale = 0;
    for (size_t k = 0; k < x.size(); ++k) {
      lin += x[k] * static_cast<double>(e.direction[k]);
      scale += std::abs(x[k] * static_cast<double>(e.direction[k]));
    }
    const double rhs = e.rhs.to_double();
    const double lhs = lin + (e.quadratic ? xx : 0.0);
    scale += std::abs(rhs) + (e.quadratic ? xx : 0.0) + 1.0;
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

bool touches_sites(const RealizationSystem& sys, const QVec& x) {
  for (const auto& h : sys.vertices)
    if (is_site(act(h, x, sys.sites), sys.sites)) return true;
  return false;
}

bool touches_sites(const RealizationSystem& sys, const std::vector<double>& x) {
  const TangentialSites& s = sys.sites;
  for (const auto& h : sys.vertices) {
    const IntVec p = momentum(h.coeffs, s);
    for (int i = 0; i < s.m(); ++i) {
      double d = 0;
      for (size_t k = 0; k < x.size(); ++k) {
        const double hx = (h.twist ? -x[k] : x[k]) - static_cast<double>(p[k]);
        d = std::max(d, std::abs(hx - static_cast<double>(s.vectors[static_cast<size_t>(i)][k])));
      }
      if (d <= 1e-9 * (1 + norm_inf(x))) return true;
    }
  }
  return false;
}

std::vector<double> to_double(const QVec& x) {
  std::vector<double> out;
  for (const auto& c : x) out.push_back(c.get_d());
  return out;
}

}  // namespace

RealizationVerdict solve_realization(const RealizationSystem& sys, int samples) {
  const int n = sys.sites.n;
  RealizationVerdict out;

  // Linear rows: black vertices, plus differences of quadratic rows against
  // the first one.
  QMatrix a;
  QVec b;
  const RootEquation* first_quad = nullptr;
  for (const auto& e : sys.equations) {
    if (!e.quadratic) {
      a.push_back(to_q(e.direction));
      b.emplace_back(e.rhs.to_mpz());
    } else if (!first_quad) {
      first_quad = &e;
    } else {
      a.push_back(sub(to_q(e.direction), to_q(first_quad->direction)));
      b.emplace_back(e.rhs.to_mpz() - first_quad->rhs.to_mpz());
    }
  }
  auto sol = solve_affine(a, b, n);
  if (!sol) {
    out.cls = RealizationClass::Inconsistent;
    return out;
  }
  const QVec& p = sol->particular;
  const auto& dirs = sol->directions;
  const int d = static_cast<int>(dirs.size());

  auto finish_point = [&](const QVec& x) {
    out.exact_point = x;
    out.point = to_double(x);
    out.residual = residual_at(sys, out.point);
    out.dimension = 0;
    out.cls = touches_sites(sys, x) ? RealizationClass::OnlyInS : RealizationClass::GenericSolutions;
    return out;
  };

  if (!first_quad) {
    if (d == 0) return finish_point(p);
    // Affine space: some point among p + k * dir avoids the finitely many
    // preimages of sites.
    out.dimension = d;
    // Each (vertex, site) pair excludes at most one point of the line.
    const int tries = static_cast<int>(sys.vertices.size()) * sys.sites.m() + 1;
    for (int k = 0; k < tries; ++k) {
      QVec x = p;
      for (size_t c = 0; c < x.size(); ++c) x[c] += mpq_class(k) * dirs[0][c];
      if (!touches_sites(sys, x)) {
        out.exact_point = x;
        out.point = to_double(x);
        out.residual = residual_at(sys, out.point);
        out.cls = RealizationClass::GenericSolutions;
        return out;
      }
    }
    out.cls = RealizationClass::OnlyInS;  // not reached
    return out;
  }

  // Quadratic row on x = p + N y:  y^T G y + beta^T y + c = 0.
  const QVec w = to_q(first_quad->direction);
  const mpq_class c = dot(p, p) + dot(p, w) - mpq_class(first_quad->rhs.to_mpz());
  if (d == 0) {
    if (c != 0) {
      out.cls = RealizationClass::Inconsistent;
      return out;
    }
    return finish_point(p);
  }
  QMatrix gram(static_cast<size_t>(d), QVec(static_cast<size_t>(d)));
  QVec beta(static_cast<size_t>(d));
  QVec two_p_w(p.size());
  for (size_t k = 0; k < p.size(); ++k) two_p_w[k] = 2 * p[k] + w[k];
  for (int r = 0; r < d; ++r) {
    for (int s = 0; s < d; ++s) gram[r][s] = dot(dirs[r], dirs[s]);
    beta[r] = dot(dirs[r], two_p_w);
  }
  // Center y0 = -G^{-1} beta / 2; radius^2 = y0^T G y0 - c.
  QVec half_minus_beta(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) half_minus_beta[r] = -beta[r] / 2;
  const auto center = solve_affine(gram, half_minus_beta, d);
  if (!center || !center->directions.empty()) throw std::logic_error("solve_realization: singular Gram matrix");
  const QVec& y0 = center->particular;
  mpq_class y0gy0 = 0;
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s) y0gy0 += y0[r] * gram[r][s] * y0[s];
  const mpq_class radius2 = y0gy0 - c;
  out.radius_squared = radius2;
  QVec x0 = p;
  for (int r = 0; r < d; ++r)
    for (size_t k = 0; k < x0.size(); ++k) x0[k] += y0[r] * dirs[r][k];

  if (radius2 < 0) {
    out.cls = RealizationClass::EmptyReal;
    return out;
  }
  if (radius2 == 0) return finish_point(x0);

  // Positive radius: a sphere of dimension d - 1 >= 0. Probe x0 + r u / |u|_G
  // for u = +-e_k first, then for pseudo-random u; only finitely many points
  // of the sphere touch S unless d == 1.
  out.dimension = d - 1;
  const double r = std::sqrt(radius2.get_d());
  const std::vector<double> xc = to_double(x0);
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  const int probes = 2 * d + (d >= 2 ? std::max(samples, 0) : 0);
  for (int k = 0; k < probes; ++k) {
    std::vector<double> u(static_cast<size_t>(d), 0.0);
    if (k < 2 * d) {
      u[static_cast<size_t>(k / 2)] = k % 2 ? -1.0 : 1.0;
    } else {
      for (auto& c : u) c = gauss(rng);
    }
    double len2 = 0;
    for (int r1 = 0; r1 < d; ++r1)
      for (int r2 = 0; r2 < d; ++r2) len2 += u[r1] * gram[r1][r2].get_d() * u[r2];
    const double scale = r / std::sqrt(len2);
    std::vector<double> x = xc;
    for (int r1 = 0; r1 < d; ++r1)
      for (size_t c2 = 0; c2 < x.size(); ++c2) x[c2] += scale * u[r1] * dirs[r1][c2].get_d();
    if (touches_sites(sys, x)) continue;
    out.point = x;
    out.residual = residual_at(sys, x);
    out.cls = RealizationClass::GenericSolutions;
    return out;
  }
  out.cls = RealizationClass::OnlyInS;
  return out;
}

std::vector<Integer> avoidable_constraint(const ColoredGraph& g, const TangentialSites& s) {
  const auto basis = relation_basis(g);
  if (basis.empty()) throw NotDegenerate();
  std::vector<Integer> out;
  for (const auto& rel : basis) {
    Integer sum;
    for (int k = 0; k < g.size(); ++k)
      if (rel[static_cast<size_t>(k)] != 0) sum += Integer(rel[static_cast<size_t>(k)]) * kenergy(g.vertex(k), s);
    out.push_back(sum);
  }
  return out;
}

TangentialSites random_sites(int m, int n, int box, std::mt19937_64& rng) {
  if (m < 1 || n < 1 || box < 1) throw std::invalid_argument("random_sites: m, n and box must be positive");
  std::uniform_int_distribution<int64_t> coord(-box, box);
  while (true) {
    std::vector<IntVec> v(static_cast<size_t>(m), IntVec(static_cast<size_t>(n)));
    for (auto& x : v)
      for (auto& c : x) c = coord(rng);
    bool distinct = true;
    for (int i = 0; i < m && distinct; ++i)
      for (int j = i + 1; j < m && distinct; ++j) distinct = v[static_cast<size_t>(i)] != v[static_cast<size_t>(j)];
    if (!distinct || rank(v) != std::min(m, n)) continue;
    return TangentialSites(n, std::move(v));
  }
}

}  // namespace rb
