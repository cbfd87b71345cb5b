#pragma once

// Small deterministic generators for property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "rb/lattice.hpp"
#include "rb/multipoly.hpp"

namespace rbtest {

using rb::IntVec;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240917);
  return engine;
}

inline int64_t uniform(int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng()); }

inline IntVec random_vector(int m, int64_t bound) {
  IntVec v(static_cast<size_t>(m));
  for (auto& c : v) c = uniform(-bound, bound);
  return v;
}

// Random vector with the given mass.
inline IntVec random_with_mass(int m, int64_t bound, int64_t target) {
  while (true) {
    IntVec v = random_vector(m, bound);
    int64_t s = 0;
    for (size_t k = 0; k + 1 < v.size(); ++k) s += v[k];
    v.back() = target - s;
    if (v.back() >= -bound && v.back() <= bound) return v;
  }
}

// Random polynomial in m variables with `terms` terms, small exponents.
inline rb::MultiPoly random_poly(int m, int terms, int max_exp = 2, int64_t coeff = 20, bool with_y = true) {
  rb::MultiPoly p(m);
  for (int k = 0; k < terms; ++k) {
    rb::MonoKey key = rb::mono_key(rb::VarKind::T, 0, static_cast<int>(uniform(0, max_exp)));
    for (int i = 0; i < m; ++i) {
      key = rb::mono_mul(key, rb::mono_key(rb::VarKind::Xi, i, static_cast<int>(uniform(0, max_exp))));
      if (with_y) key = rb::mono_mul(key, rb::mono_key(rb::VarKind::Y, i, static_cast<int>(uniform(0, 1))));
    }
    p += rb::MultiPoly::monomial(m, key, rb::Integer(uniform(-coeff, coeff)));
  }
  return p;
}

}  // namespace rbtest
