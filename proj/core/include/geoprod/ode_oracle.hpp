#pragma once

#include <vector>

#include "geoprod/geodesic.hpp"

namespace geoprod {

/// Fixed-step RK4 configuration for the horizontal geodesic system.
struct OdeConfig {
  double step = 1e-3;
  double t_max = 2.0;
  /// Project the lift back onto the group (polar factor) every this many steps.
  int reorth_interval = 100;
};

/// Faithful coset projection for SO(n)/SO(k) with the stabilizer in the
/// lower-right block: right multiplication by H fixes the first n-k matrix
/// columns, so those columns identify the coset.
class OrbitMap {
 public:
  /// Validates that exp of every given stabilizer generator fixes the
  /// anchored columns.
  OrbitMap(int ambient, int stabilizer_block, const std::vector<Matrix>& stabilizer_generators);

  int ambient() const { return ambient_; }
  int anchored_columns() const { return ambient_ - block_; }

  /// Max absolute entry difference over the anchored columns.
  double coset_distance(const Matrix& a, const Matrix& b) const;

 private:
  int ambient_;
  int block_;
};

/// Derive the orbit map for a split whose h is a lower-right so(k) block
/// (or trivial), validating against the split's h-basis.
OrbitMap orbit_map_for_split(const ReductiveSplit& split);

/// The integrated horizontal lift: alpha(0) = I, omega_h = 0 throughout.
struct OdePath {
  std::vector<double> ts;
  std::vector<Matrix> alphas;
  std::vector<Vector> omegas;  // omega_m samples, g-coefficients
};

/// Integrate the coupled system
///   d/dt omega_m = A^{-1} [A omega_m, omega_m]_m,    d/dt alpha = alpha omega_m
/// from (v, I) with fixed-step RK4. Throws ConfigError when
/// step * |v| > 0.1 (stability guard).
OdePath integrate_horizontal(const ChainMetric& cm, const Vector& v, const OdeConfig& cfg);

struct PathComparison {
  double max_deviation = 0.0;
  std::vector<std::pair<double, double>> per_sample;  // (t, deviation)
};

/// Coset deviation between the closed-form curve and an integrated path at
/// every path sample.
PathComparison compare_paths(const ProductCurve& pc, const OdePath& path, const OrbitMap& om);

struct BenchResult {
  double closed_form_seconds = 0.0;
  double ode_seconds = 0.0;
  double deviation = 0.0;
  int samples = 0;
};

/// Wall-clock comparison: closed-form evaluation at `t_samples` vs RK4
/// integration to the same horizon, plus the achieved coset deviation.
BenchResult bench(const ChainMetric& cm, const OrbitMap& om, const Vector& v,
                  const std::vector<double>& t_samples, const OdeConfig& cfg);

}  // namespace geoprod
