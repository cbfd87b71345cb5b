#pragma once

// Exhaustive property sweeps over enumerated graphs: square roots vanish
// from every charpoly, the xi_i = 0 specialization factors over projection
// components, degenerate-resonant graphs are not allowable (and have no
// realization outside S on the given sites), and graphs without avoidable
// resonance have at most as many vertices of each color as their rank.
//
// The serial reference walks the tree in order; the parallel version splits
// it into subtrees and merges per-task results. Reports are order-free, so
// both return identical reports.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rb/geometry.hpp"
#include "rb/graphs.hpp"

namespace rb {

struct SweepOptions {
  EnumerationLimits limits;
  bool roots = true;        // eliminate_roots succeeds
  bool factorization = true;  // chi at xi_i = 0 is the product over components
  bool allowability = true; // degenerate-resonant implies not allowable
  bool ranks = true;        // per-color count <= rank without avoidable resonance
  std::vector<TangentialSites> sites;  // realization checks for degenerate-resonant graphs
  int threads = 0;          // 0: RB_THREADS or the OpenMP default; 1: serial reference
  int split_depth = 3;
  size_t cache_limit = 1 << 16;  // component charpolys per thread
};

struct SweepFailure {
  std::string graph;
  std::string check;
  std::string detail;
  friend bool operator==(const SweepFailure&, const SweepFailure&) = default;
};

struct SweepReport {
  int64_t graphs = 0;
  int64_t nondegenerate = 0;
  int64_t degenerate_resonant = 0;
  int64_t avoidable = 0;
  int64_t factorization_checks = 0;  // (graph, i) pairs
  int64_t rank_checks = 0;
  int64_t realizations = 0;
  std::array<int64_t, 5> verdicts{};  // indexed by RealizationClass
  int64_t failure_count = 0;
  std::map<std::string, int64_t> failures_by_check;  // roots, factorization, allowability, realization, ranks
  std::vector<SweepFailure> failures;  // the smallest few by (graph, check, detail)
  double seconds = 0;  // wall clock
  struct {
    double enumeration = 0, roots = 0, factorization = 0, classification = 0, realization = 0;
  } cpu;  // per-check time summed over threads

  bool ok() const { return failure_count == 0; }
  void merge(const SweepReport& o);
  friend bool operator==(const SweepReport& a, const SweepReport& b);
};

int resolve_threads(int requested);

SweepReport run_sweep(const SweepOptions& opts);

}  // namespace rb
