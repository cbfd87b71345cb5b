#include "rb/certify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "rb/blocks.hpp"
#include "rb/modp.hpp"
#include "rb/zfactor.hpp"

namespace rb {

// --- parity ------------------------------------------------------------------

bool parity_admissible(const IntVec& a, int64_t ell) { return ((mass(a) - ell) % 2 + 2) % 2 == 0; }

bool ParityReport::holds() const {
  return wrong_parity_value != 0 &&
         std::all_of(factors.begin(), factors.end(), [](const LinearFactor& f) { return f.admissible; });
}

namespace {

ZPoly to_zpoly(const std::vector<Integer>& c) {
  ZPoly out;
  for (const auto& v : c) out.push_back(v.to_mpz());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

void check_input(const MultiPoly& chi, const char* who) {
  if (chi.has_roots()) throw std::invalid_argument(std::string(who) + ": square roots present");
  if (chi.degree_t() < 1 || !chi.is_monic_in_t())
    throw std::invalid_argument(std::string(who) + ": expected a polynomial monic in t of positive degree");
}

}  // namespace

std::vector<IntVec> linear_factors(const MultiPoly& chi) {
  check_input(chi, "linear_factors");
  const int m = chi.nvars();
  // Candidate a_k: minus the integer roots of chi at xi = e_k.
  std::vector<std::vector<int64_t>> options(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    std::vector<Integer> z(static_cast<size_t>(m), Integer(0));
    z[static_cast<size_t>(k)] = Integer(1);
    for (const auto& [f, mult] : factor_monic_z(to_zpoly(chi.specialize_all(z)))) {
      if (f.size() != 2) continue;
      if (!f[0].fits_slong_p()) continue;
      options[static_cast<size_t>(k)].push_back(f[0].get_si());
    }
    if (options[static_cast<size_t>(k)].empty()) return {};
  }
  std::vector<IntVec> out;
  IntVec a(static_cast<size_t>(m));
  std::vector<size_t> idx(static_cast<size_t>(m), 0);
  while (true) {
    for (int k = 0; k < m; ++k) a[static_cast<size_t>(k)] = options[static_cast<size_t>(k)][idx[static_cast<size_t>(k)]];
    MultiPoly q;
    if (chi.divide_monic_t(MultiPoly::t(m) + MultiPoly::linear_xi(m, a), q)) out.push_back(a);
    int k = 0;
    while (k < m && ++idx[static_cast<size_t>(k)] == options[static_cast<size_t>(k)].size()) idx[static_cast<size_t>(k++)] = 0;
    if (k == m) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

ParityReport parity_test(const MultiPoly& chi, int64_t ell) {
  ParityReport r;
  r.ell = ell;
  for (auto& a : linear_factors(chi)) r.factors.push_back({a, parity_admissible(a, ell)});
  const std::vector<Integer> ones(static_cast<size_t>(chi.nvars()), Integer(1));
  const auto coeffs = chi.specialize_all(ones);
  const uint64_t g = static_cast<uint64_t>(((ell + 1) % 2 + 2) % 2);
  uint64_t value = 0;
  for (size_t k = coeffs.size(); k-- > 0;) value = (value * g + coeffs[k].mod_u64(2)) % 2;
  r.wrong_parity_value = value;
  return r;
}

// --- irreducibility --------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Irreducible:
      return "irreducible";
    case Verdict::Reducible:
      return "reducible";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

uint64_t text_hash(const std::string& text) {
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<int> common_factor_degrees(int n, const std::vector<PrimePattern>& patterns) {
  std::vector<bool> possible(static_cast<size_t>(n) + 1, true);
  for (const auto& p : patterns) {
    std::vector<bool> sums(static_cast<size_t>(n) + 1, false);
    sums[0] = true;
    for (int d : p.degrees)
      for (int s = n; s >= d; --s)
        if (sums[static_cast<size_t>(s - d)]) sums[static_cast<size_t>(s)] = true;
    for (int s = 0; s <= n; ++s) possible[static_cast<size_t>(s)] = possible[static_cast<size_t>(s)] && sums[static_cast<size_t>(s)];
  }
  std::vector<int> out;
  for (int s = 1; s < n; ++s)
    if (possible[static_cast<size_t>(s)]) out.push_back(s);
  return out;
}

namespace {

std::vector<PrimePattern> patterns_of(const std::vector<Integer>& f, const std::vector<uint32_t>& primes, int n,
                                      bool stop_when_excluded) {
  std::vector<PrimePattern> out;
  for (uint32_t p : primes) {
    const UniPolyModP fp = UniPolyModP::from_integers(p, f);
    out.push_back({p, degree_pattern(factor_modp(fp))});
    if (stop_when_excluded && common_factor_degrees(n, out).empty()) break;
  }
  return out;
}

}  // namespace

Certificate certify_irreducible(const MultiPoly& chi, const CertifyOptions& opts) {
  check_input(chi, "certify_irreducible");
  Certificate cert;
  const int n = chi.degree_t();
  const int m = chi.nvars();
  if (n == 1) {
    cert.verdict = Verdict::Irreducible;
    return cert;
  }
  std::mt19937_64 rng(text_hash(chi.str()));
  for (int attempt = 0; attempt < opts.attempts; ++attempt) {
    ++cert.attempts;
    const int64_t range = 8 + 4 * attempt;
    std::vector<Integer> z;
    for (int i = 0; i < m; ++i) z.emplace_back(std::uniform_int_distribution<int64_t>(-range, range)(rng));
    const auto f = chi.specialize_all(z);
    auto patterns = patterns_of(f, opts.primes, n, true);
    if (common_factor_degrees(n, patterns).empty()) {
      cert.verdict = Verdict::Irreducible;
      cert.specialization = z;
      cert.patterns = std::move(patterns);
      return cert;
    }
    if (m == 0) break;  // nothing to vary
  }
  if (opts.search_factors) {
    if (auto factors = factor_monic_multivariate(chi); factors && factors->size() > 1) {
      cert.verdict = Verdict::Reducible;
      cert.factors = std::move(*factors);
    }
  }
  return cert;
}

bool verify_certificate(const MultiPoly& chi, const Certificate& cert) {
  const int n = chi.degree_t();
  switch (cert.verdict) {
    case Verdict::Irreducible: {
      if (n == 1) return chi.is_monic_in_t();
      if (static_cast<int>(cert.specialization.size()) != chi.nvars() || cert.patterns.empty()) return false;
      const auto f = chi.specialize_all(cert.specialization);
      std::vector<uint32_t> primes;
      for (const auto& p : cert.patterns) primes.push_back(p.prime);
      const auto again = patterns_of(f, primes, n, false);
      for (size_t k = 0; k < again.size(); ++k)
        if (again[k].degrees != cert.patterns[k].degrees) return false;
      return common_factor_degrees(n, again).empty();
    }
    case Verdict::Reducible: {
      if (cert.factors.size() < 2) return false;
      MultiPoly prod = MultiPoly::constant(chi.nvars(), 1);
      for (const auto& f : cert.factors) {
        if (f.degree_t() < 1 || !f.is_monic_in_t()) return false;
        prod *= f;
      }
      return prod == chi;
    }
    case Verdict::Inconclusive:
      return true;
  }
  return false;
}

// --- separation ----------------------------------------------------------------

std::vector<Collision> separation_check(const std::vector<FamilyMember>& family) {
  std::map<std::string, std::vector<int>> groups;
  for (size_t k = 0; k < family.size(); ++k) groups[family[k].chi.str()].push_back(static_cast<int>(k));
  std::vector<Collision> out;
  for (const auto& [text, members] : groups) {
    for (size_t a = 0; a < members.size(); ++a)
      for (size_t b = a + 1; b < members.size(); ++b) {
        const auto& ga = family[static_cast<size_t>(members[a])].graph;
        const auto& gb = family[static_cast<size_t>(members[b])].graph;
        if (canonical_form(ga) != canonical_form(gb)) out.push_back({members[a], members[b]});
      }
  }
  std::sort(out.begin(), out.end(),
            [](const Collision& x, const Collision& y) { return std::tie(x.first, x.second) < std::tie(y.first, y.second); });
  return out;
}

// --- specialization tree -------------------------------------------------------

SpecializationTree specialization_tree(const MultiPoly& chi, const ColoredGraph& g) {
  if (chi.nvars() != g.m()) throw std::invalid_argument("specialization_tree: variable count mismatch");
  SpecializationTree tree;
  const int m = g.m();
  for (int i = 0; i < m; ++i) {
    IndexSplit s;
    s.index = i;
    s.specialized = chi.specialize(i, 0);
    s.blocks = project_components(g, i);
    MultiPoly prod = MultiPoly::constant(m, 1);
    for (const auto& b : s.blocks) {
      s.block_chis.push_back(charpoly_block(b).insert_variable(i));
      prod *= s.block_chis.back();
    }
    s.product_matches = prod == s.specialized;
    tree.splits.push_back(std::move(s));
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int split : {i, j}) {
        const int other = split == i ? j : i;
        const auto& chis = tree.splits[static_cast<size_t>(split)].block_chis;
        std::vector<MultiPoly> reduced;
        for (const auto& c : chis) reduced.push_back(c.specialize(other, 0));
        for (size_t a = 0; a < reduced.size(); ++a)
          for (size_t b = a + 1; b < reduced.size(); ++b)
            if (reduced[a] == reduced[b]) tree.congruences.push_back({i, j, split, static_cast<int>(a), static_cast<int>(b)});
      }
  return tree;
}

}  // namespace rb
