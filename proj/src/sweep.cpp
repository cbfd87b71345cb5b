#include "rb/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <tuple>
#include <utility>

#include <omp.h>

#include "rb/blocks.hpp"

namespace rb {

namespace {

constexpr size_t kKeptFailures = 20;

bool failure_less(const SweepFailure& a, const SweepFailure& b) {
  return std::tie(a.graph, a.check, a.detail) < std::tie(b.graph, b.check, b.detail);
}

// Keeps the kKeptFailures smallest failures, so the kept list does not depend
// on the traversal order.
void keep(std::vector<SweepFailure>& kept, SweepFailure f) {
  kept.insert(std::upper_bound(kept.begin(), kept.end(), f, failure_less), std::move(f));
  if (kept.size() > kKeptFailures) kept.pop_back();
}

void add_failure(SweepReport& r, const ColoredGraph& g, std::string check, std::string detail) {
  ++r.failure_count;
  ++r.failures_by_check[check];
  keep(r.failures, {format_graph_line(g), std::move(check), std::move(detail)});
}

using ComponentKey = std::pair<int, std::vector<GroupElement>>;

class ComponentCache {
 public:
  explicit ComponentCache(size_t limit) : limit_(limit) {}

  // Charpoly of a projection component, lifted back to m variables.
  const MultiPoly& get(int i, const ColoredGraph& comp) {
    ComponentKey key{i, comp.vertices()};
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    if (map_.size() >= limit_) map_.clear();
    return map_.emplace(std::move(key), charpoly_block(comp).insert_variable(i)).first->second;
  }

 private:
  size_t limit_;
  std::map<ComponentKey, MultiPoly> map_;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point& mark) {
  const auto now = Clock::now();
  const double s = std::chrono::duration<double>(now - mark).count();
  mark = now;
  return s;
}

void check_graph(const std::vector<int>& set, const GraphEnumerator& en, const SweepOptions& opts,
                 ComponentCache& cache, SweepReport& r) {
  auto mark = Clock::now();
  const ColoredGraph g = en.graph(set);
  r.cpu.enumeration += since(mark);
  ++r.graphs;
  MultiPoly chi;
  try {
    chi = charpoly_block(g);
  } catch (const OddExponent& e) {
    add_failure(r, g, "roots", e.what());
    return;
  }
  r.cpu.roots += since(mark);
  if (opts.factorization && g.m() > 1) {
    for (int i = 0; i < g.m(); ++i) {
      ++r.factorization_checks;
      MultiPoly prod = MultiPoly::constant(g.m(), 1);
      for (const auto& comp : project_components(g, i)) prod *= cache.get(i, comp);
      if (!(chi.specialize(i, 0) == prod)) add_failure(r, g, "factorization", "index " + std::to_string(i + 1));
    }
    r.cpu.factorization += since(mark);
  }
  const ResonanceClass cls = is_resonant(g);
  r.nondegenerate += cls == ResonanceClass::Nondegenerate;
  r.degenerate_resonant += cls == ResonanceClass::DegenerateResonant;
  r.avoidable += cls == ResonanceClass::Avoidable;
  if (cls == ResonanceClass::DegenerateResonant) {
    if (opts.allowability && is_allowable(g)) add_failure(r, g, "allowability", "degenerate-resonant but allowable");
    r.cpu.classification += since(mark);
    for (const auto& s : opts.sites) {
      const RealizationVerdict v = solve_realization(build_system(g, s));
      ++r.realizations;
      ++r.verdicts[static_cast<size_t>(v.cls)];
      if (v.cls == RealizationClass::GenericSolutions) add_failure(r, g, "realization", "generic solution for n = " + std::to_string(s.n));
    }
    r.cpu.realization += since(mark);
  }
  if (opts.ranks && cls != ResonanceClass::Avoidable) {
    ++r.rank_checks;
    const ColorRanks c = color_ranks(g);
    if (c.black_count > c.black_rank || c.red_count > c.red_rank)
      add_failure(r, g, "ranks",
                  "black " + std::to_string(c.black_count) + "/" + std::to_string(c.black_rank) + ", red " +
                      std::to_string(c.red_count) + "/" + std::to_string(c.red_rank));
  }
  r.cpu.classification += since(mark);
}

}  // namespace

void SweepReport::merge(const SweepReport& o) {
  graphs += o.graphs;
  nondegenerate += o.nondegenerate;
  degenerate_resonant += o.degenerate_resonant;
  avoidable += o.avoidable;
  factorization_checks += o.factorization_checks;
  rank_checks += o.rank_checks;
  realizations += o.realizations;
  for (size_t k = 0; k < verdicts.size(); ++k) verdicts[k] += o.verdicts[k];
  failure_count += o.failure_count;
  for (const auto& [check, n] : o.failures_by_check) failures_by_check[check] += n;
  cpu.enumeration += o.cpu.enumeration;
  cpu.roots += o.cpu.roots;
  cpu.factorization += o.cpu.factorization;
  cpu.classification += o.cpu.classification;
  cpu.realization += o.cpu.realization;
  for (const auto& f : o.failures) keep(failures, f);
}

bool operator==(const SweepReport& a, const SweepReport& b) {
  return a.graphs == b.graphs && a.nondegenerate == b.nondegenerate && a.degenerate_resonant == b.degenerate_resonant &&
         a.avoidable == b.avoidable && a.factorization_checks == b.factorization_checks &&
         a.rank_checks == b.rank_checks && a.realizations == b.realizations && a.verdicts == b.verdicts &&
         a.failure_count == b.failure_count && a.failures_by_check == b.failures_by_check && a.failures == b.failures;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return omp_get_max_threads();
}

SweepReport run_sweep(const SweepOptions& opts) {
  const auto start = Clock::now();
  const GraphEnumerator en(opts.limits);
  SweepReport total;
  const int threads = resolve_threads(opts.threads);
  if (threads == 1) {
    ComponentCache cache(opts.cache_limit);
    en.for_each([&](const std::vector<int>& set) { check_graph(set, en, opts, cache, total); });
  } else {
    std::vector<std::vector<int>> prefix, roots;
    en.split(opts.split_depth, prefix, roots);
    const size_t tasks = prefix.size() + roots.size();
    std::vector<SweepReport> parts(tasks);
#pragma omp parallel num_threads(threads)
    {
      ComponentCache cache(opts.cache_limit);
#pragma omp for schedule(dynamic, 1)
      for (size_t t = 0; t < tasks; ++t) {
        if (t < prefix.size()) {
          check_graph(prefix[t], en, opts, cache, parts[t]);
        } else {
          en.for_each_below(roots[t - prefix.size()],
                            [&](const std::vector<int>& set) { check_graph(set, en, opts, cache, parts[t]); });
        }
      }
    }
    for (const auto& p : parts) total.merge(p);
  }
  total.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return total;
}

}  // namespace rb
