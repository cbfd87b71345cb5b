#pragma once

// Geometric realizations of combinatorial graphs: the graph Gamma_S on R^n
// (mirror points across the hyperplanes H_ij and antipodes on the spheres
// S_ij), the root equations of a graph and their exact classification.

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rb/graphs.hpp"
#include "rb/linalg.hpp"

namespace rb {

struct NotDegenerate : std::invalid_argument {
  NotDegenerate() : std::invalid_argument("graph is not degenerate") {}
};

struct GeometricEdge {
  EdgeColor color;
  int i;  // black: q = p + v_j - v_i, ordered; red: i < j
  int j;
  friend bool operator==(const GeometricEdge&, const GeometricEdge&) = default;
};

// Every edge of Gamma_S joining p to q (a pair of sites carries both colors).
std::vector<GeometricEdge> geometric_edges(const QVec& p, const QVec& q, const TangentialSites& s);
std::optional<GeometricEdge> geometric_edge(const QVec& p, const QVec& q, const TangentialSites& s);

// One equation per non-root vertex h = (a, sigma):
//   (x, pi(a)) = K(h)          sigma = +1
//   |x|^2 + (x, pi(a)) = K(h)  sigma = -1
struct RootEquation {
  int vertex;
  IntVec direction;  // pi(a)
  Integer rhs;       // K(h)
  bool quadratic;
};

struct RealizationSystem {
  TangentialSites sites;
  std::vector<GroupElement> vertices;  // of the source graph, root first
  std::vector<RootEquation> equations;
};

RealizationSystem build_system(const ColoredGraph& g, const TangentialSites& s);

// h x = -pi(a) + sigma x.
QVec act(const GroupElement& h, const QVec& x, const TangentialSites& s);

enum class RealizationClass { GenericSolutions, OnlyInS, OnlyComplex, EmptyReal, Inconsistent };
std::string to_string(RealizationClass c);

struct RealizationVerdict {
  RealizationClass cls;
  int dimension = -1;                // of the real solution set, when nonempty
  std::optional<QVec> exact_point;   // rational witness
  std::vector<double> point;         // witness used for the verdict (empty if none)
  mpq_class radius_squared;          // of the reduced sphere, when one is present
  double residual = 0;               // max relative residual of `point`
};

// Linear rows and differences of quadratic rows are eliminated exactly over
// Q; the remaining quadratic row becomes a sphere in the reduced
// coordinates. only_in_S means that every real solution x sends some vertex
// h x onto a site, so the realization lies in the special component.
// `samples` random directions on a sphere of dimension >= 1 are probed
// besides the coordinate axes.
RealizationVerdict solve_realization(const RealizationSystem& sys, int samples = 64);

// Sum_a n_a K(g_a) for every basis relation; throws NotDegenerate.
std::vector<Integer> avoidable_constraint(const ColoredGraph& g, const TangentialSites& s);

// Uniform integer sites in [-box, box]^n, redrawn until pairwise distinct and
// of full rank min(m, n).
TangentialSites random_sites(int m, int n, int box, std::mt19937_64& rng);

}  // namespace rb
