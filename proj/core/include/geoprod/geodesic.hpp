#pragma once

#include <vector>

#include "geoprod/homogeneous.hpp"

namespace geoprod {

/// Initial velocity v split into eigenspace components Y_i = pi_i(v) and the
/// geodesic generators X_i of the product curve:
///
///   X_1 = (1/lambda_1) sum_k lambda_k Y_k,
///   X_i = ((lambda_{i-1} - lambda_i) / (lambda_{i-1} lambda_i)) sum_{k>=i} lambda_k Y_k.
///
/// The generators satisfy sum_i X_i = v and X_i in m_i + ... + m_N; equal
/// adjacent eigenvalues give X_i = 0 exactly.
struct GeneratorSet {
  ChainMetric metric;
  Vector velocity;             // g-coefficients, lies in m
  std::vector<Vector> Y;       // eigenspace components of the velocity
  std::vector<AlgebraVector> X;  // product-curve generators
};

GeneratorSet generators_from_velocity(const ChainMetric& cm, const Vector& v);

/// One sample of the Maurer-Cartan lift of the product curve: omega(t) and
/// its derivative from the closed transport formulas, with F = A omega_m.
struct LiftSample {
  double t = 0.0;
  AlgebraVector omega;
  AlgebraVector omega_dot;
  Vector F;
  Vector F_dot;
};

/// The curve t -> phi_{X_1}(t) ... phi_{X_N}(t), a coset representative of
/// the geodesic through the origin with initial velocity v.
class ProductCurve {
 public:
  explicit ProductCurve(GeneratorSet gen);

  const GeneratorSet& generators() const { return gen_; }
  int count() const { return static_cast<int>(gen_.X.size()); }

  /// Product of one-parameter subgroups at time t; defined for all real t.
  GroupElement eval(double t) const;

  /// T_i^j(t) X = Ad((phi_{X_{i+1}}(t) ... phi_{X_j}(t))^{-1}) X, the adjoint
  /// transport along the partial product. Identity when i = j. 0-based
  /// indices with 0 <= i <= j < N.
  AlgebraVector transport(int i, int j, double t, const AlgebraVector& x) const;

  /// omega(t) = sum_i T_i^N(t) X_i and
  /// omega_dot(t) = sum_i [T_i^N(t) X_i, sum_{k>=i} T_k^N(t) X_k].
  LiftSample maurer_cartan(double t) const;

 private:
  /// All top transports U_i = T_i^{N-1}(t) X_i with one pass of suffix
  /// products per call.
  std::vector<Vector> top_transports(double t) const;

  GeneratorSet gen_;
  std::vector<Matrix> gen_matrices_;
  AlgebraPtr algebra_;
};

struct LaxResidual {
  double full = 0.0;   // |dF/dt - [F, omega]|
  double mod_h = 0.0;  // norm of the m-component only
};

/// Residual of the geodesic equation dF/dt = [F, omega] at time t. Both
/// entries vanish for metrics built from an ad-invariant form.
LaxResidual lax_residual(const ChainMetric& cm, const ProductCurve& pc, double t);

/// Residual of the transported form of the geodesic equation,
///   sum_i A [T_i X_i, sum_{k>=i} T_k X_k]_m = [A sum_i (T_i X_i)_m, sum_k T_k X_k] (mod h).
/// Agrees with lax_residual(...).mod_h; the two are evaluated through
/// different summation paths.
double gelan_residual(const ChainMetric& cm, const ProductCurve& pc, double t);

/// <A omega_m, omega_m>_0, conserved along geodesics.
double energy(const ChainMetric& cm, const ProductCurve& pc, double t);

}  // namespace geoprod
