#pragma once

// The acceptance criteria as one run: exact examples, the exhaustive sweeps,
// separation and irreducibility at m <= 3, the elliptic search and the
// numerical cross-checks.

#include <functional>
#include <string>
#include <vector>

namespace rb {

struct CriterionResult {
  int id = 0;
  bool pass = false;
  bool known_unattainable = false;
  double seconds = 0;
  double limit = 0;
  std::string detail;

  std::string line() const;
};

struct AcceptanceOptions {
  int sweep_m = 4;
  int sweep_vertices = 6;
  int sweep_bound = 3;
  int sites_per_n = 7;  // random site sets for each n = 4..6
  int threads = 0;      // as in SweepOptions
  // Criterion 10 asks for a common real simple spectrum over every m = 2
  // graph, including non-allowable blocks whose spectrum is never real.
  std::vector<int> known_unattainable{10};
  std::function<void(const CriterionResult&)> progress;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;  // sorted by id
  std::string sweep_summary;

  int unexpected() const;  // failures outside known_unattainable
};

AcceptanceReport run_acceptance(const AcceptanceOptions& opts = {});

}  // namespace rb
