#include "rb/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rb/blocks.hpp"
#include "rb/certify.hpp"
#include "rb/geometry.hpp"
#include "rb/spectral.hpp"
#include "rb/sweep.hpp"

namespace rb {

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  double seconds = -1;  // overrides the measured wall time when >= 0
};

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

PolyMatrix matrix_from_text(const std::vector<std::vector<std::string>>& rows, int m) {
  const int n = static_cast<int>(rows.size());
  PolyMatrix a(n, m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a.at(r, c) = MultiPoly::parse(rows[r][c], m);
  return a;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const MultiPoly kG1 = MultiPoly::parse("t^2 + x1*t + x2*t - 3*x1*x2", 2);
const MultiPoly kG2 = MultiPoly::parse("t^2 + x1*t + x2*t + 4*x1*x2", 2);

// --- 1, 2: exact examples -------------------------------------------------------

Outcome golden_two_by_two() {
  const MultiPoly a = charpoly_block(BlockMatrix{{}, matrix_from_text({{"-x1", "2*y1*y2"}, {"2*y1*y2", "-x2"}}, 2)});
  const MultiPoly b = charpoly_block(BlockMatrix{{}, matrix_from_text({{"0", "-2*y1*y2"}, {"2*y1*y2", "-x1-x2"}}, 2)});
  const MultiPoly at_zero = MultiPoly::parse("t^2 + x2*t", 2);
  const bool ok = a == kG1 && b == kG2 && a.specialize(0, 0) == at_zero && b.specialize(0, 0) == at_zero;
  return {ok, a.str() + " ; " + b.str() + " ; xi1=0: " + a.specialize(0, 0).str()};
}

Outcome three_vertex_example() {
  const ColoredGraph g(2, {{{-1, -1}, true}, {{0, 0}, false}, {{1, -1}, false}});
  const BlockMatrix c = build_matrix(g);
  const PolyMatrix expected =
      matrix_from_text({{"-x1-x2", "2*y1*y2", "0"}, {"-2*y1*y2", "0", "2*y1*y2"}, {"0", "2*y1*y2", "x2-x1"}}, 2);
  bool ok = c.entries == expected;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int64_t> d(-5, 5);
  for (int k = 0; k < 20 && ok; ++k) {
    const IntVec u{d(rng), d(rng)};
    const MultiPoly uxi = MultiPoly::linear_xi(2, u);
    for (bool twisted : {false, true}) {
      PolyMatrix e = expected;
      for (int r = 0; r < 3; ++r) e.at(r, r) -= uxi;
      if (twisted)
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s) e.at(r, s) = -e.at(r, s);
      ok = ok && translate_block(c, u, twisted).entries == e;
    }
  }
  return {ok, "C_A and 40 translates entrywise"};
}

// --- 3, 4, 8, 9: exhaustive sweeps ----------------------------------------------

struct SweepTotals {
  SweepReport report;
  double wall = 0;
  std::vector<std::string> per_m;
};

SweepTotals sweep_all(int max_m, int max_vertices, int bound, int sites_per_n, int threads) {
  SweepTotals out;
  for (int m = 1; m <= max_m; ++m) {
    SweepOptions opts;
    opts.limits = {m, max_vertices, bound};
    opts.threads = threads;
    std::mt19937_64 rng(1000 + m);
    for (int n = 4; n <= 6; ++n)
      for (int k = 0; k < sites_per_n; ++k) opts.sites.push_back(random_sites(m, n, 20, rng));
    const SweepReport r = run_sweep(opts);
    out.wall += r.seconds;
    out.per_m.push_back(fmt("m=%d: %lld graphs", m, static_cast<long long>(r.graphs)));
    out.report.merge(r);
  }
  return out;
}

int64_t failures(const SweepReport& r, const std::string& check) {
  auto it = r.failures_by_check.find(check);
  return it == r.failures_by_check.end() ? 0 : it->second;
}

std::string first_failure(const SweepReport& r, const std::string& check) {
  for (const auto& f : r.failures)
    if (f.check == check) return " first: " + f.graph + " (" + f.detail + ")";
  return "";
}

// Pairs on their own: -2e_i sits on v_i, -3e_i + e_j has negative square radius.
Outcome realization_pairs(int max_m, int sites_per_n) {
  int64_t runs = 0, bad = 0;
  for (int m = 2; m <= max_m; ++m) {
    std::mt19937_64 rng(2000 + m);
    for (int n = 4; n <= 6; ++n)
      for (int k = 0; k < sites_per_n; ++k) {
        const TangentialSites s = random_sites(m, n, 20, rng);
        for (int i = 0; i < m; ++i) {
          IntVec a(static_cast<size_t>(m), 0);
          a[i] = -2;
          const RealizationVerdict v = solve_realization(build_system(ColoredGraph(m, {{IntVec(m, 0), false}, {a, true}}), s));
          QVec vi;
          for (int64_t c : s.vectors[i]) vi.push_back(mpq_class(c));
          ++runs;
          bad += !(v.cls == RealizationClass::OnlyInS && v.exact_point && *v.exact_point == vi);
          for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            IntVec b(static_cast<size_t>(m), 0);
            b[i] = -3;
            b[j] = 1;
            const RealizationVerdict w = solve_realization(build_system(ColoredGraph(m, {{IntVec(m, 0), false}, {b, true}}), s));
            ++runs;
            bad += w.cls != RealizationClass::EmptyReal;
          }
        }
      }
  }
  return {bad == 0, fmt("%lld pair systems, %lld wrong", static_cast<long long>(runs), static_cast<long long>(bad))};
}

// --- 5, 7: families at m <= 3 ----------------------------------------------------

std::vector<FamilyMember> allowable_family(int m, int max_vertices, int bound) {
  std::vector<FamilyMember> out;
  for (const auto& g : enumerate_graphs(m, max_vertices, bound))
    if (!rank_and_degeneracy(g).degenerate && is_allowable(g)) out.push_back({g, charpoly_block(g)});
  return out;
}

Outcome separation() {
  int64_t members = 0, collisions = 0, extra = 0, raw_collisions = 0;
  for (int m = 1; m <= 3; ++m) {
    std::vector<FamilyMember> fam = allowable_family(m, 4, 3);
    members += static_cast<int64_t>(fam.size());
    collisions += static_cast<int64_t>(separation_check(fam).size());
    // Without the quotient: add the negation {(-a, sigma)} of every all-black
    // member and compare the polynomials of distinct vertex sets.
    std::vector<std::pair<CanonicalKey, MultiPoly>> raw;
    auto add = [&](const ColoredGraph& g) {
      CanonicalKey v = g.vertices();
      std::sort(v.begin(), v.end());
      for (const auto& [w, chi] : raw)
        if (w == v) return;
      raw.emplace_back(std::move(v), charpoly_block(g));
    };
    for (const auto& f : fam) add(f.graph);
    const size_t before = raw.size();
    for (const auto& f : fam)
      if (!f.graph.has_red_edge()) add(conjugate(tau_image(f.graph)));
    extra += static_cast<int64_t>(raw.size() - before);
    for (size_t a = 0; a < raw.size(); ++a)
      for (size_t b = a + 1; b < raw.size(); ++b) raw_collisions += raw[a].second == raw[b].second;
  }
  return {collisions == 0,
          fmt("%lld graphs, %lld collisions after the quotient; with %lld negated graphs added and no quotient, "
              "%lld collisions",
              static_cast<long long>(members), static_cast<long long>(collisions), static_cast<long long>(extra),
              static_cast<long long>(raw_collisions))};
}

Outcome base_cases() {
  const MultiPoly b3 = determinant(matrix_from_text({{"t", "2*y1*y2", "0", "0"},
                                                     {"-2*y1*y2", "t+x1+x2", "2*y2*y3", "0"},
                                                     {"0", "2*y2*y3", "t+x1+2*x2-x3", "2*y1*y3"},
                                                     {"0", "0", "2*y1*y3", "t+2*x1+2*x2-2*x3"}},
                                                    3))
                           .eliminate_roots();
  const MultiPoly c3 = determinant(matrix_from_text({{"t", "-2*y1*y2", "0", "0"},
                                                     {"-2*y1*y2", "t-x1+x2", "2*y2*y3", "0"},
                                                     {"0", "-2*y2*y3", "t-x1+2*x2+x3", "2*y1*y3"},
                                                     {"0", "0", "2*y1*y3", "t-2*x1+2*x2+2*x3"}},
                                                    3))
                           .eliminate_roots();
  std::string detail;
  bool ok = true;
  for (const auto& [name, chi] : std::vector<std::pair<std::string, MultiPoly>>{{"b3", b3}, {"c3", c3}, {"G1", kG1}, {"G2", kG2}}) {
    const Certificate c = certify_irreducible(chi);
    ok = ok && c.verdict == Verdict::Irreducible && verify_certificate(chi, c);
    detail += name + " " + to_string(c.verdict) + ", ";
  }
  const MultiPoly line = charpoly_block(complete_closure({{0, 0}, {-1, 1}, {-2, 2}}));
  const Certificate c = certify_irreducible(line);
  ok = ok && c.verdict == Verdict::Reducible && verify_certificate(line, c);
  detail += "line " + to_string(c.verdict);
  for (const auto& f : c.factors) detail += " (" + f.str() + ")";
  return {ok, detail};
}

Outcome irreducibility_sweep() {
  int64_t total = 0, irr = 0, inconclusive = 0, reducible = 0;
  for (int m = 1; m <= 3; ++m)
    for (const auto& f : allowable_family(m, 4, 3)) {
      const Certificate c = certify_irreducible(f.chi);
      ++total;
      irr += c.verdict == Verdict::Irreducible;
      inconclusive += c.verdict == Verdict::Inconclusive;
      reducible += c.verdict == Verdict::Reducible;
    }
  const double rate = total ? static_cast<double>(inconclusive) / static_cast<double>(total) : 0;
  return {reducible == 0 && rate <= 0.05,
          fmt("%lld graphs: %lld irreducible, %lld inconclusive (%.2f%%), %lld reducible", static_cast<long long>(total),
              static_cast<long long>(irr), static_cast<long long>(inconclusive), 100 * rate,
              static_cast<long long>(reducible))};
}

// --- 10, 11: numerics ---------------------------------------------------------------

Outcome elliptic() {
  const std::vector<ColoredGraph> all = enumerate_graphs(2, 4, 2);
  const EllipticReport rep = search_elliptic(all, 2);
  std::vector<ColoredGraph> allowable;
  int64_t complex_at_best = 0;
  for (size_t k = 0; k < all.size(); ++k) {
    if (is_allowable(all[k])) allowable.push_back(all[k]);
  }
  for (double margin : rep.graph_margins) complex_at_best += margin < 0;
  const EllipticReport sub = search_elliptic(allowable, 2);

  // G2: sampled classification against (xi1 + xi2)^2 >= 16 xi1 xi2.
  const QuadraticRegion region = quadratic_block_region(kG2);
  const bool coeffs = region.a == Integer(1) && region.b == Integer(-14) && region.c == Integer(1);
  int64_t disagree = 0;
  for (int k = 1; k < 2000; ++k) {
    const double x1 = k / 2000.0, x2 = 1 - x1;
    const bool real_by_formula = (x1 + x2) * (x1 + x2) >= 16 * x1 * x2;
    const double ratio = x1 / x2;
    const bool real_by_region = !(region.has_complex_interval && ratio > region.lo && ratio < region.hi);
    const std::vector<double> xi{x1, x2};
    const SpectrumReport s = eigenvalues_at(complete_closure({{0, 0}, {-1, -1}}), xi);
    const bool real_by_spectrum = s.n_real == 2;
    // Skip samples within rounding of the boundary.
    if (std::abs((x1 + x2) * (x1 + x2) - 16 * x1 * x2) < 1e-9) continue;
    disagree += real_by_formula != real_by_region || real_by_formula != real_by_spectrum;
  }
  const bool literal = rep.found;
  return {literal && coeffs && disagree == 0,
          fmt("all %zu graphs: best margin %.3g (%lld blocks with a complex spectrum there); allowable subfamily (%zu graphs): %s, "
              "margin %.4g at xi=(%.5g, %.3g); G2 %s, %lld sample disagreements",
              all.size(), rep.margin, static_cast<long long>(complex_at_best), allowable.size(), sub.found ? "found" : "not found",
              sub.margin, sub.point.empty() ? 0.0 : sub.point[0], sub.point.empty() ? 0.0 : sub.point[1],
              region.str().c_str(), static_cast<long long>(disagree))};
}

Outcome numeric_cross_checks() {
  std::mt19937_64 rng(11);
  std::vector<ColoredGraph> pool;
  for (int m = 2; m <= 3; ++m)
    for (const auto& g : enumerate_graphs(m, 4, 2)) pool.push_back(g);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> pos(0.05, 2.0), scale(0.1, 10.0);
  std::uniform_int_distribution<int64_t> coeff(-4, 4);
  int64_t hom_bad = 0, cov_bad = 0;
  for (int k = 0; k < 100; ++k) {
    const ColoredGraph& g = pool[pick(rng)];
    std::vector<double> xi(static_cast<size_t>(g.m()));
    for (auto& x : xi) x = pos(rng);
    IntVec u(static_cast<size_t>(g.m()));
    for (auto& c : u) c = coeff(rng);
    hom_bad += !homogeneity_check(g, xi, scale(rng), 1e-8);
    const BlockMatrix c = build_matrix(g);
    const double shift = MultiPoly::linear_xi(g.m(), u).eval(xi, 0.0).real();
    const auto base = eigenvalues_at(c, charpoly_block(c), xi).eigenvalues;
    for (bool twisted : {false, true}) {
      const BlockMatrix t = translate_block(c, u, twisted);
      const auto moved = eigenvalues_at(t, charpoly_block(t), xi).eigenvalues;
      std::vector<Complex> expected;
      for (Complex l : base) expected.push_back(twisted ? -(l - shift) : l - shift);
      cov_bad += !spectra_match(moved, expected, 1e-8);
    }
  }
  return {hom_bad == 0 && cov_bad == 0,
          fmt("100 triples: %lld homogeneity and %lld covariance mismatches at 1e-8", static_cast<long long>(hom_bad),
              static_cast<long long>(cov_bad))};
}

}  // namespace

std::string CriterionResult::line() const {
  std::string s = fmt("criterion %2d: %s (%.2f s of %.0f s) ", id, pass ? "PASS" : "FAIL", seconds, limit) + detail;
  if (seconds > limit) s += " [over time]";
  if (!pass && known_unattainable) s += fmt("\ncriterion %2d: known unattainable as stated, see README", id);
  return s;
}

int AcceptanceReport::unexpected() const {
  return static_cast<int>(std::count_if(criteria.begin(), criteria.end(),
                                        [](const CriterionResult& c) { return !c.pass && !c.known_unattainable; }));
}

AcceptanceReport run_acceptance(const AcceptanceOptions& opts) {
  AcceptanceReport out;
  auto report = [&](int id, double limit, const Outcome& o, double measured) {
    CriterionResult c;
    c.id = id;
    c.limit = limit;
    c.seconds = o.seconds >= 0 ? o.seconds : measured;
    c.pass = o.pass && c.seconds <= limit;
    c.known_unattainable = std::find(opts.known_unattainable.begin(), opts.known_unattainable.end(), id) !=
                           opts.known_unattainable.end();
    c.detail = o.detail;
    if (opts.progress) opts.progress(c);
    out.criteria.push_back(std::move(c));
  };
  auto run = [&](int id, double limit, const std::function<Outcome()>& f) {
    const auto start = Clock::now();
    const Outcome o = f();
    report(id, limit, o, elapsed(start));
  };

  run(1, 1, golden_two_by_two);
  run(2, 1, three_vertex_example);

  const SweepTotals sw = sweep_all(opts.sweep_m, opts.sweep_vertices, opts.sweep_bound, opts.sites_per_n, opts.threads);
  const SweepReport& r = sw.report;
  std::string counts;
  for (const auto& s : sw.per_m) counts += s + "; ";
  out.sweep_summary = fmt("sweep m<=%d, <=%d vertices, bound %d, %d site sets per m, %d thread(s): ", opts.sweep_m,
                          opts.sweep_vertices, opts.sweep_bound, 3 * opts.sites_per_n, resolve_threads(opts.threads)) +
                      counts +
                      fmt("%.1f s wall; cpu enumerate %.1f, roots %.1f, factorization %.1f, classify %.1f, realize %.1f",
                          sw.wall, r.cpu.enumeration, r.cpu.roots, r.cpu.factorization, r.cpu.classification,
                          r.cpu.realization);
  // Serial runs attribute time exactly; with threads the sums are cpu time.
  const double base = r.cpu.enumeration + r.cpu.roots;
  report(3, 300,
         {failures(r, "roots") == 0,
          fmt("%lld graphs, %lld odd exponents", static_cast<long long>(r.graphs),
              static_cast<long long>(failures(r, "roots"))) +
              first_failure(r, "roots"),
          base},
         0);
  report(4, 600,
         {failures(r, "factorization") == 0,
          fmt("%lld (graph, index) identities, %lld failed", static_cast<long long>(r.factorization_checks),
              static_cast<long long>(failures(r, "factorization"))) +
              first_failure(r, "factorization"),
          base + r.cpu.factorization},
         0);

  const auto pairs_start = Clock::now();
  const Outcome pairs = realization_pairs(opts.sweep_m, opts.sites_per_n);
  const double pairs_secs = elapsed(pairs_start);
  const auto cls = [&](RealizationClass c) { return static_cast<long long>(r.verdicts[static_cast<size_t>(c)]); };
  report(8, 600,
         {failures(r, "allowability") == 0 && failures(r, "realization") == 0 && pairs.pass,
          fmt("%lld degenerate-resonant graphs, %lld allowable; %lld realizations: %lld generic, %lld only_in_S, "
              "%lld empty_real, %lld inconsistent; ",
              static_cast<long long>(r.degenerate_resonant), static_cast<long long>(failures(r, "allowability")),
              static_cast<long long>(r.realizations), cls(RealizationClass::GenericSolutions),
              cls(RealizationClass::OnlyInS), cls(RealizationClass::EmptyReal), cls(RealizationClass::Inconsistent)) +
              pairs.detail + first_failure(r, "allowability") + first_failure(r, "realization"),
          r.cpu.enumeration + r.cpu.classification + r.cpu.realization + pairs_secs},
         0);
  report(9, 300,
         {failures(r, "ranks") == 0,
          fmt("%lld graphs without avoidable resonance, %lld violations", static_cast<long long>(r.rank_checks),
              static_cast<long long>(failures(r, "ranks"))) +
              first_failure(r, "ranks"),
          r.cpu.enumeration + r.cpu.classification},
         0);

  run(5, 300, separation);
  run(6, 30, base_cases);
  run(7, 600, irreducibility_sweep);
  run(10, 120, elliptic);
  run(11, 60, numeric_cross_checks);

  std::sort(out.criteria.begin(), out.criteria.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
  return out;
}

}  // namespace rb
