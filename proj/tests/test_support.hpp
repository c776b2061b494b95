#pragma once

#include <random>
#include <vector>

#include "geoprod/geodesic.hpp"
#include "geoprod/homogeneous.hpp"
#include "geoprod/lie_algebra.hpp"

namespace geoprod::testing {

inline constexpr std::uint64_t kSeed = 42;

struct Rng {
  std::mt19937_64 engine{kSeed};
  std::normal_distribution<double> gauss{0.0, 1.0};
  std::uniform_real_distribution<double> uniform{0.0, 1.0};

  double normal() { return gauss(engine); }
  double range(double lo, double hi) { return lo + (hi - lo) * uniform(engine); }
};

inline Vector random_m_vector(const ChainMetric& cm, Rng& rng) {
  Vector coords(cm.m_dim());
  for (int i = 0; i < coords.size(); ++i) coords[i] = rng.normal();
  return cm.m_coords_to_algebra(coords);
}

inline Vector random_unit_m_vector(const ChainMetric& cm, Rng& rng) {
  Vector v = random_m_vector(cm, rng);
  return v / cm.split().form.norm(v);
}

inline AlgebraVector random_algebra_vector(const AlgebraPtr& alg, Rng& rng) {
  Vector c(alg->dim());
  for (int i = 0; i < c.size(); ++i) c[i] = rng.normal();
  return alg->element(c);
}

// Catalog spaces used across the suites. Chains are given as the bottom
// levels h_0 .. h_{N-1}; the full algebra is appended automatically.
inline ChainMetric make_space(int n, const std::vector<int>& block_sizes,
                              const std::vector<double>& lambdas) {
  auto alg = catalog_so(n);
  auto form = trace_form(alg);
  std::vector<std::vector<int>> levels;
  for (int k : block_sizes) {
    levels.push_back(k == 0 ? catalog_trivial(n) : catalog_so_block(n, k));
  }
  std::vector<int> all(alg->dim());
  for (int i = 0; i < alg->dim(); ++i) all[i] = i;
  levels.push_back(all);
  return ChainMetric::from_chain(SubalgebraChain::make(alg, levels), form, lambdas);
}

// SO(3)/{e}, chain trivial < SO(2) < SO(3), N = 2.
inline ChainMetric so3_full(const std::vector<double>& lambdas = {1.0, 2.0}) {
  return make_space(3, {0, 2}, lambdas);
}

// SO(4)/SO(2), chain SO(2) < SO(3) < SO(4), N = 2.
inline ChainMetric so4_over_so2(const std::vector<double>& lambdas = {1.0, 2.0}) {
  return make_space(4, {2, 3}, lambdas);
}

// SO(4)/{e}, chain trivial < SO(2) < SO(3) < SO(4), N = 3.
inline ChainMetric so4_full(const std::vector<double>& lambdas = {0.5, 2.0, 3.0}) {
  return make_space(4, {0, 2, 3}, lambdas);
}

}  // namespace geoprod::testing
