#include "rb/modp.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rb {

namespace {

uint32_t mulmod(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// x^(p^k) mod f by repeated p-th powering.
UniPolyModP frobenius(const UniPolyModP& g, int k, const UniPolyModP& f) {
  UniPolyModP r = g % f;
  for (int s = 0; s < k; ++s) r = powmod(r, Integer(static_cast<long>(f.prime())), f);
  return r;
}

}  // namespace

UniPolyModP::UniPolyModP(uint32_t p, std::vector<uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw std::invalid_argument("UniPolyModP: modulus must be prime");
  for (auto& c : c_) c %= p_;
  trim();
}

UniPolyModP UniPolyModP::from_integers(uint32_t p, std::span<const Integer> coeffs) {
  std::vector<uint32_t> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.push_back(static_cast<uint32_t>(v.mod_u64(p)));
  return UniPolyModP(p, std::move(c));
}

UniPolyModP UniPolyModP::monomial(uint32_t p, int degree, uint32_t c) {
  std::vector<uint32_t> v(static_cast<size_t>(degree + 1), 0);
  v.back() = c;
  return UniPolyModP(p, std::move(v));
}

void UniPolyModP::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPolyModP UniPolyModP::scaled(uint32_t k) const {
  UniPolyModP r = *this;
  for (auto& c : r.c_) c = mulmod(c, k % p_, p_);
  r.trim();
  return r;
}

UniPolyModP UniPolyModP::monic() const {
  if (c_.empty()) return *this;
  return scaled(inverse_mod(lead(), p_));
}

UniPolyModP UniPolyModP::derivative() const {
  std::vector<uint32_t> d;
  for (size_t k = 1; k < c_.size(); ++k) d.push_back(mulmod(c_[k], static_cast<uint32_t>(k % p_), p_));
  return UniPolyModP(p_, std::move(d));
}

UniPolyModP& UniPolyModP::operator+=(const UniPolyModP& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] = (c_[k] + o.c_[k]) % p_;
  trim();
  return *this;
}

UniPolyModP& UniPolyModP::operator-=(const UniPolyModP& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] = (c_[k] + p_ - o.c_[k]) % p_;
  trim();
  return *this;
}

UniPolyModP operator*(const UniPolyModP& a, const UniPolyModP& b) {
  if (a.is_zero() || b.is_zero()) return UniPolyModP(a.p_, {});
  std::vector<uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) acc[i + j] = (acc[i + j] + uint64_t{a.c_[i]} * b.c_[j]) % a.p_;
  std::vector<uint32_t> c(acc.begin(), acc.end());
  return UniPolyModP(a.p_, std::move(c));
}

void UniPolyModP::divmod(const UniPolyModP& a, const UniPolyModP& b, UniPolyModP& q, UniPolyModP& r) {
  if (b.is_zero()) throw std::domain_error("UniPolyModP: division by zero");
  const uint32_t p = a.p_;
  const uint32_t inv = inverse_mod(b.lead(), p);
  std::vector<uint32_t> rem = a.c_;
  const int db = b.degree();
  std::vector<uint32_t> quo(rem.size() > static_cast<size_t>(db) ? rem.size() - static_cast<size_t>(db) : 0, 0);
  for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
    const uint32_t c = mulmod(rem[static_cast<size_t>(k)], inv, p);
    if (c == 0) continue;
    quo[static_cast<size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = rem[static_cast<size_t>(k - db + j)];
      slot = (slot + p - mulmod(c, b.c_[static_cast<size_t>(j)], p)) % p;
    }
  }
  q = UniPolyModP(p, std::move(quo));
  r = UniPolyModP(p, std::move(rem));
}

UniPolyModP operator%(const UniPolyModP& a, const UniPolyModP& b) {
  UniPolyModP q, r;
  UniPolyModP::divmod(a, b, q, r);
  return r;
}

UniPolyModP operator/(const UniPolyModP& a, const UniPolyModP& b) {
  UniPolyModP q, r;
  UniPolyModP::divmod(a, b, q, r);
  return q;
}

std::string UniPolyModP::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const uint32_t c = c_[static_cast<size_t>(k)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0 || c != 1) os << c;
    if (k > 0 && c != 1) os << "*";
    if (k == 1) os << "t";
    if (k > 1) os << "t^" << k;
  }
  return os.str();
}

uint32_t inverse_mod(uint32_t a, uint32_t p) {
  int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  if (new_r == 0) throw std::domain_error("inverse_mod: zero has no inverse");
  while (new_r != 0) {
    const int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

UniPolyModP gcd(UniPolyModP a, UniPolyModP b) {
  while (!b.is_zero()) {
    UniPolyModP r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPolyModP powmod(const UniPolyModP& base, const Integer& e, const UniPolyModP& f) {
  const mpz_class exp = e.to_mpz();
  UniPolyModP result(f.prime(), {1});
  result = result % f;
  const UniPolyModP b = base % f;
  const size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (size_t k = bits; k-- > 0;) {
    result = (result * result) % f;
    if (mpz_tstbit(exp.get_mpz_t(), k)) result = (result * b) % f;
  }
  return result;
}

namespace {

// Squarefree decomposition of a monic polynomial: pairs (g_i, i) with
// f = prod g_i^i and each g_i squarefree.
std::vector<std::pair<UniPolyModP, int>> squarefree(const UniPolyModP& f) {
  const uint32_t p = f.prime();
  std::vector<std::pair<UniPolyModP, int>> out;
  if (f.degree() <= 0) return out;
  const UniPolyModP d = f.derivative();
  if (d.is_zero()) {
    // f(t) = g(t^p): take the p-th root (coefficients are fixed by Frobenius
    // in F_p).
    std::vector<uint32_t> root;
    for (int k = 0; k <= f.degree(); k += static_cast<int>(p)) root.push_back(f.coeff(k));
    for (auto& [g, mult] : squarefree(UniPolyModP(p, root))) out.push_back({g, mult * static_cast<int>(p)});
    return out;
  }
  UniPolyModP c = gcd(f, d);
  UniPolyModP w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    UniPolyModP y = gcd(w, c);
    UniPolyModP z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // Remaining part is a p-th power.
    std::vector<uint32_t> root;
    for (int k = 0; k <= c.degree(); k += static_cast<int>(p)) root.push_back(c.coeff(k));
    for (auto& [g, mult] : squarefree(UniPolyModP(p, root).monic()))
      out.push_back({g, mult * static_cast<int>(p)});
  }
  return out;
}

// Distinct-degree factorization of a squarefree monic polynomial.
std::vector<std::pair<UniPolyModP, int>> distinct_degree(UniPolyModP f) {
  std::vector<std::pair<UniPolyModP, int>> out;
  const uint32_t p = f.prime();
  const UniPolyModP x = UniPolyModP::monomial(p, 1);
  UniPolyModP h = x % f;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, Integer(static_cast<long>(p)), f);
    UniPolyModP g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.push_back({g, d});
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back({f.monic(), f.degree()});
  return out;
}

// Splits a product of distinct irreducibles of degree d into its factors.
void equal_degree(const UniPolyModP& f, int d, std::mt19937_64& rng, std::vector<UniPolyModP>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const uint32_t p = f.prime();
  std::uniform_int_distribution<uint32_t> coin(0, p - 1);
  while (true) {
    std::vector<uint32_t> c(static_cast<size_t>(f.degree()));
    for (auto& v : c) v = coin(rng);
    UniPolyModP a(p, c);
    if (a.degree() <= 0) continue;
    UniPolyModP b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      UniPolyModP term = a % f;
      b = term;
      for (int k = 1; k < d; ++k) {
        term = (term * term) % f;
        b += term;
      }
    } else {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      b = powmod(a, Integer(e), f) - UniPolyModP(p, {1});
    }
    UniPolyModP g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

bool factor_less(const ModPFactor& a, const ModPFactor& b) {
  if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
  const auto& ca = a.factor.coeffs();
  const auto& cb = b.factor.coeffs();
  if (ca != cb) return std::lexicographical_compare(ca.rbegin(), ca.rend(), cb.rbegin(), cb.rend());
  return a.multiplicity < b.multiplicity;
}

}  // namespace

std::vector<ModPFactor> factor_modp(const UniPolyModP& f) {
  if (f.is_zero()) throw std::invalid_argument("factor_modp: zero polynomial");
  std::mt19937_64 rng(0x5eed0000u + f.prime());
  std::vector<ModPFactor> out;
  for (auto& [part, mult] : squarefree(f.monic())) {
    for (auto& [block, d] : distinct_degree(part)) {
      std::vector<UniPolyModP> pieces;
      equal_degree(block, d, rng, pieces);
      for (auto& piece : pieces) out.push_back({piece, mult});
    }
  }
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

std::vector<int> degree_pattern(const std::vector<ModPFactor>& factors) {
  std::vector<int> out;
  for (const auto& f : factors)
    for (int k = 0; k < f.multiplicity; ++k) out.push_back(f.factor.degree());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible_modp(const UniPolyModP& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  const UniPolyModP g = f.monic();
  const UniPolyModP x = UniPolyModP::monomial(f.prime(), 1);
  for (int q : prime_factors(n)) {
    UniPolyModP h = frobenius(x, n / q, g);
    if (gcd(g, h - x).degree() != 0) return false;
  }
  return (frobenius(x, n, g) - x % g).is_zero();
}

}  // namespace rb
