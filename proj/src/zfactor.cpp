#include "rb/zfactor.hpp"

#include <algorithm>
#include <stdexcept>

#include "rb/modp.hpp"

namespace rb {

namespace {

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly derivative(const ZPoly& a) {
  ZPoly d;
  for (size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

// Monic gcd over Q. For monic integer inputs the result is integral.
ZPoly gcd_q(const ZPoly& a, const ZPoly& b) {
  using QP = std::vector<mpq_class>;
  auto to_q = [](const ZPoly& p) {
    QP q;
    for (const auto& c : p) q.emplace_back(c);
    return q;
  };
  auto qtrim = [](QP& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  QP x = to_q(a), y = to_q(b);
  qtrim(x);
  qtrim(y);
  while (!y.empty()) {
    QP r = x;
    while (r.size() >= y.size() && !r.empty()) {
      const mpq_class f = r.back() / y.back();
      const size_t shift = r.size() - y.size();
      for (size_t k = 0; k < y.size(); ++k) r[shift + k] -= f * y[k];
      r.pop_back();
      qtrim(r);
    }
    x = std::move(y);
    y = std::move(r);
  }
  ZPoly out;
  const mpq_class lead = x.back();
  for (auto& c : x) {
    mpq_class v = c / lead;
    if (v.get_den() != 1) throw std::logic_error("gcd_q: non-integral gcd of monic polynomials");
    out.push_back(v.get_num());
  }
  return out;
}

mpz_class mod_positive(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  return r;
}

UniPolyModP to_modp(const ZPoly& a, uint32_t p) {
  std::vector<uint32_t> c;
  for (const auto& v : a) c.push_back(static_cast<uint32_t>(mod_positive(v, mpz_class(p)).get_ui()));
  return UniPolyModP(p, c);
}

ZPoly from_modp(const UniPolyModP& a) {
  ZPoly out;
  for (uint32_t c : a.coeffs()) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

// Two-factor Hensel lifting of f = g h (mod p) to modulus p^steps; g and h
// are monic and coprime mod p.
void hensel_pair(const ZPoly& f, ZPoly& g, ZPoly& h, uint32_t p, int steps) {
  const UniPolyModP gp = to_modp(g, p), hp = to_modp(h, p);
  // s g + t h = 1 over F_p by the extended Euclidean algorithm.
  UniPolyModP r0 = gp, r1 = hp, s0(p, {1}), s1(p, {}), t0(p, {}), t1(p, {1});
  while (!r1.is_zero()) {
    UniPolyModP q, r;
    UniPolyModP::divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPolyModP s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0) throw std::logic_error("hensel_pair: factors are not coprime");
  const uint32_t inv = inverse_mod(r0.coeff(0), p);
  const UniPolyModP s = s0.scaled(inv), t = t0.scaled(inv);

  mpz_class pk = p;
  for (int k = 1; k < steps; ++k) {
    ZPoly diff = f;
    const ZPoly gh = zpoly_mul(g, h);
    diff.resize(std::max(diff.size(), gh.size()));
    for (size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    for (auto& c : diff) {
      if (c % pk != 0) throw std::logic_error("hensel_pair: lifting invariant broken");
      c /= pk;
    }
    trim(diff);
    const UniPolyModP e = to_modp(diff, p);
    UniPolyModP q, b;
    UniPolyModP::divmod(e * s, hp, q, b);
    const UniPolyModP a = (e * t + q * gp) % gp;
    const ZPoly az = from_modp(a), bz = from_modp(b);
    for (size_t i = 0; i < az.size(); ++i) g[i] += pk * az[i];
    for (size_t i = 0; i < bz.size(); ++i) h[i] += pk * bz[i];
    pk *= p;
    for (auto& c : g) c = mod_positive(c, pk);
    for (auto& c : h) c = mod_positive(c, pk);
    g.back() = 1;
    h.back() = 1;
  }
}

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Squarefree monic f, deg >= 1.
std::vector<ZPoly> factor_squarefree(const ZPoly& f) {
  const int n = deg(f);
  if (n == 1) return {f};

  // Prime with f squarefree mod p; among a few candidates keep the one with
  // the fewest modular factors.
  std::vector<ModPFactor> best;
  uint32_t best_p = 0;
  int tried = 0;
  for (uint32_t p = 2147483629u; tried < 4 && p > 1000000000u; p -= 2) {
    if (!is_prime_u32(p)) continue;
    const UniPolyModP fp = to_modp(f, p);
    if (gcd(fp, fp.derivative()).degree() != 0) continue;
    ++tried;
    auto fac = factor_modp(fp);
    if (best_p == 0 || fac.size() < best.size()) {
      best = std::move(fac);
      best_p = p;
    }
  }
  if (best_p == 0) throw std::runtime_error("factor_monic_z: no suitable prime");
  if (best.size() == 1) return {f};

  // Coefficient bound for factors: 2^n ||f||_1.
  mpz_class norm = 0;
  for (const auto& c : f) norm += abs(c);
  const mpz_class bound = (norm << n) * 2 + 1;
  int steps = 1;
  mpz_class modulus = best_p;
  while (modulus <= bound) {
    modulus *= best_p;
    ++steps;
  }

  // Lift one factor at a time against the product of the rest.
  std::vector<ZPoly> lifted;
  ZPoly rest = f;
  for (size_t k = 0; k + 1 < best.size(); ++k) {
    ZPoly g = from_modp(best[k].factor);
    UniPolyModP others(best_p, {1});
    for (size_t j = k + 1; j < best.size(); ++j) others = others * best[j].factor;
    ZPoly h = from_modp(others);
    hensel_pair(rest, g, h, best_p, steps);
    lifted.push_back(g);
    rest = h;
  }
  lifted.push_back(rest);

  auto symmetric = [&](ZPoly a) {
    const mpz_class half = modulus / 2;
    for (auto& c : a) {
      c = mod_positive(c, modulus);
      if (c > half) c -= modulus;
    }
    return a;
  };

  // Recombination by increasing subset size.
  std::vector<ZPoly> out;
  ZPoly remaining = f;
  std::vector<ZPoly> pool = lifted;
  for (size_t size = 1; 2 * size <= pool.size();) {
    bool found = false;
    std::vector<int> pick(size);
    for (size_t k = 0; k < size; ++k) pick[k] = static_cast<int>(k);
    while (true) {
      ZPoly prod{mpz_class(1)};
      for (int k : pick) {
        prod = zpoly_mul(prod, pool[static_cast<size_t>(k)]);
        for (auto& c : prod) c = mod_positive(c, modulus);
      }
      prod = symmetric(prod);
      if (auto q = zpoly_divide_monic(remaining, prod)) {
        out.push_back(prod);
        remaining = *q;
        for (size_t k = size; k-- > 0;) pool.erase(pool.begin() + pick[k]);
        found = true;
        break;
      }
      // Next combination.
      int i = static_cast<int>(size) - 1;
      while (i >= 0 && pick[static_cast<size_t>(i)] == static_cast<int>(pool.size() - size) + i) --i;
      if (i < 0) break;
      ++pick[static_cast<size_t>(i)];
      for (size_t j = static_cast<size_t>(i) + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!found) ++size;
  }
  out.push_back(remaining);
  return out;
}

bool zpoly_less(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t k = a.size(); k-- > 0;)
    if (a[k] != b[k]) return a[k] < b[k];
  return false;
}

}  // namespace

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

std::optional<ZPoly> zpoly_divide_monic(const ZPoly& a, const ZPoly& b) {
  if (b.empty() || b.back() != 1) throw std::invalid_argument("zpoly_divide_monic: divisor must be monic");
  if (a.size() < b.size()) {
    if (a.empty()) return ZPoly{};
    return std::nullopt;
  }
  ZPoly r = a;
  ZPoly q(a.size() - b.size() + 1);
  for (size_t k = q.size(); k-- > 0;) {
    const mpz_class c = r[k + b.size() - 1];
    q[k] = c;
    if (c != 0)
      for (size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  trim(q);
  return q;
}

std::vector<ZFactor> factor_monic_z(const ZPoly& f0) {
  ZPoly f = f0;
  trim(f);
  if (deg(f) < 1 || f.back() != 1) throw std::invalid_argument("factor_monic_z: expected monic of degree >= 1");
  // Squarefree part f / gcd(f, f'), then multiplicities by repeated division.
  const ZPoly g = gcd_q(f, derivative(f));
  const ZPoly radical = deg(g) > 0 ? *zpoly_divide_monic(f, g) : f;
  std::vector<ZFactor> out;
  for (auto& p : factor_squarefree(radical)) {
    int mult = 0;
    while (auto q = zpoly_divide_monic(f, p)) {
      f = *q;
      ++mult;
    }
    out.push_back({p, mult});
  }
  std::sort(out.begin(), out.end(), [](const ZFactor& a, const ZFactor& b) { return zpoly_less(a.factor, b.factor); });
  return out;
}

std::optional<std::vector<MultiPoly>> factor_monic_multivariate(const MultiPoly& chi) {
  const int m = chi.nvars();
  const int n = chi.degree_t();
  if (chi.has_roots()) throw std::invalid_argument("factor_monic_multivariate: square roots present");
  if (!chi.is_monic_in_t()) throw std::invalid_argument("factor_monic_multivariate: not monic in t");
  if (n <= 1) return std::vector<MultiPoly>{chi};

  // xi_i -> base^(D^i), D above every xi degree of chi (and so of its factors).
  int d = 1;
  for (int i = 0; i < m; ++i) d = std::max(d, chi.degree(VarKind::Xi, i) + 1);
  mpz_class max_coeff = 1;
  for (const auto& term : chi.terms()) max_coeff = std::max(max_coeff, mpz_class(abs(term.coeff.to_mpz())));

  for (int attempt = 0; attempt < 4; ++attempt) {
    // Guess for the largest factor coefficient, doubled in bits per attempt.
    mpz_class base = (max_coeff << (n * (1 << attempt))) * 2 + 1;
    std::vector<int64_t> weight(static_cast<size_t>(m));
    int64_t w = 1;
    for (int i = 0; i < m; ++i, w *= d) weight[static_cast<size_t>(i)] = w;

    ZPoly f(static_cast<size_t>(n) + 1, mpz_class(0));
    for (const auto& term : chi.terms()) {
      int64_t e = 0;
      for (int i = 0; i < m; ++i) e += weight[static_cast<size_t>(i)] * mono_exponent(term.key, VarKind::Xi, i);
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
      f[static_cast<size_t>(mono_exponent(term.key, VarKind::T))] += term.coeff.to_mpz() * power;
    }

    // Balanced base digits back to exponent vectors.
    auto decode = [&](const ZPoly& g) {
      MultiPoly out(m);
      for (size_t k = 0; k < g.size(); ++k) {
        mpz_class v = g[k];
        int64_t e = 0;
        const mpz_class half = base / 2;
        while (v != 0) {
          mpz_class digit = mod_positive(v, base);
          if (digit > half) digit -= base;
          v = (v - digit) / base;
          if (digit != 0) {
            MonoKey key = mono_key(VarKind::T, 0, static_cast<int>(k));
            int64_t rest = e;
            for (int i = 0; i < m; ++i) {
              const int x = static_cast<int>(rest % d);
              rest /= d;
              if (x > 0) key = mono_mul(key, mono_key(VarKind::Xi, i, x));
            }
            if (rest != 0) return std::optional<MultiPoly>{};
            out += MultiPoly::monomial(m, key, Integer(digit));
          }
          ++e;
        }
      }
      return std::optional<MultiPoly>{out};
    };

    // The image may split further than chi; recombine univariate factors.
    std::vector<ZPoly> pool;
    for (const auto& [g, mult] : factor_monic_z(f))
      for (int k = 0; k < mult; ++k) pool.push_back(g);
    std::vector<MultiPoly> factors;
    MultiPoly rest = chi;
    bool ok = true;
    while (!pool.empty() && ok) {
      bool found = false;
      for (size_t size = 1; size <= pool.size() && !found; ++size) {
        std::vector<size_t> pick(size);
        for (size_t k = 0; k < size; ++k) pick[k] = k;
        while (true) {
          ZPoly prod{mpz_class(1)};
          for (size_t k : pick) prod = zpoly_mul(prod, pool[k]);
          MultiPoly q;
          if (auto h = decode(prod); h && rest.divide_monic_t(*h, q)) {
            factors.push_back(*h);
            rest = q;
            for (size_t k = size; k-- > 0;) pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick[k]));
            found = true;
            break;
          }
          size_t i = size;
          while (i > 0 && pick[i - 1] == pool.size() - size + i - 1) --i;
          if (i == 0) break;
          ++pick[i - 1];
          for (size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
      }
      ok = found;
    }
    if (ok && rest == MultiPoly::constant(m, 1)) return factors;
  }
  return std::nullopt;
}

}  // namespace rb
