#include "geoprod/geodesic.hpp"

#include <cmath>

namespace geoprod {

namespace {

Vector bracket_coeffs(const LieAlgebraBasis& alg, const Vector& x, const Vector& y) {
  Vector out = Vector::Zero(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    if (x[i] != 0.0) out += x[i] * (alg.ad_of_basis(i) * y);
  }
  return out;
}

}  // namespace

GeneratorSet generators_from_velocity(const ChainMetric& cm, const Vector& v) {
  const int n = cm.count();
  const auto algebra = cm.split().form.algebra();

  std::vector<Vector> y(n);
  for (int i = 0; i < n; ++i) y[i] = project_i(cm, i, v);

  // Weighted suffix sums S_i = sum_{k>=i} lambda_k Y_k.
  std::vector<Vector> suffix(n);
  suffix[n - 1] = cm.lambda(n - 1) * y[n - 1];
  for (int i = n - 2; i >= 0; --i) suffix[i] = suffix[i + 1] + cm.lambda(i) * y[i];

  std::vector<AlgebraVector> x;
  x.reserve(n);
  x.push_back(algebra->element(suffix[0] / cm.lambda(0)));
  for (int i = 1; i < n; ++i) {
    const double prev = cm.lambda(i - 1);
    const double cur = cm.lambda(i);
    if (prev == cur) {
      x.push_back(algebra->zero());  // exact zero, not roundoff
    } else {
      x.push_back(algebra->element(((prev - cur) / (prev * cur)) * suffix[i]));
    }
  }
  return GeneratorSet{cm, v, std::move(y), std::move(x)};
}

ProductCurve::ProductCurve(GeneratorSet gen) : gen_(std::move(gen)) {
  algebra_ = gen_.metric.split().form.algebra();
  gen_matrices_.reserve(gen_.X.size());
  for (const auto& x : gen_.X) gen_matrices_.push_back(x.matrix());
}

GroupElement ProductCurve::eval(double t) const {
  Matrix g = Matrix::Identity(algebra_->ambient(), algebra_->ambient());
  for (const auto& xm : gen_matrices_) g *= mat_exp(t * xm);
  return GroupElement{algebra_, std::move(g)};
}

AlgebraVector ProductCurve::transport(int i, int j, double t, const AlgebraVector& x) const {
  if (i < 0 || j < i || j >= count()) {
    throw IndexError("transport: need 0 <= i <= j < N");
  }
  if (x.algebra != algebra_) throw AlgebraMismatch("transport: algebra mismatch");
  if (i == j) return x;
  const int amb = algebra_->ambient();
  Matrix p = Matrix::Identity(amb, amb);
  for (int k = i + 1; k <= j; ++k) p *= mat_exp(t * gen_matrices_[k]);
  // Ad(p^{-1}) x = p^{-1} (x p)
  const Matrix moved = p.partialPivLu().solve(x.matrix() * p);
  return AlgebraVector{algebra_, algebra_->to_coeffs(moved, tol::span)};
}

std::vector<Vector> ProductCurve::top_transports(double t) const {
  const int n = count();
  const int amb = algebra_->ambient();
  std::vector<Vector> u(n);
  u[n - 1] = gen_.X[n - 1].coeffs;
  Matrix suffix = Matrix::Identity(amb, amb);  // phi_{i+1}(t) ... phi_{N-1}(t)
  for (int i = n - 2; i >= 0; --i) {
    suffix = mat_exp(t * gen_matrices_[i + 1]) * suffix;
    const Matrix moved = suffix.partialPivLu().solve(gen_matrices_[i] * suffix);
    u[i] = algebra_->to_coeffs(moved, tol::span);
  }
  return u;
}

LiftSample ProductCurve::maurer_cartan(double t) const {
  const int n = count();
  const auto u = top_transports(t);

  // Suffix sums R_i = sum_{k>=i} U_k; omega = R_0.
  std::vector<Vector> r(n);
  r[n - 1] = u[n - 1];
  for (int i = n - 2; i >= 0; --i) r[i] = r[i + 1] + u[i];

  Vector omega_dot = Vector::Zero(algebra_->dim());
  for (int i = 0; i < n; ++i) omega_dot += bracket_coeffs(*algebra_, u[i], r[i]);

  const auto& cm = gen_.metric;
  const Matrix& pm = cm.split().proj_m;
  LiftSample sample;
  sample.t = t;
  sample.omega = AlgebraVector{algebra_, r[0]};
  sample.omega_dot = AlgebraVector{algebra_, omega_dot};
  sample.F = apply_A(cm, pm * r[0]);
  sample.F_dot = apply_A(cm, pm * omega_dot);
  return sample;
}

LaxResidual lax_residual(const ChainMetric& cm, const ProductCurve& pc, double t) {
  const auto algebra = cm.split().form.algebra();
  if (algebra != pc.generators().metric.split().form.algebra()) {
    throw AlgebraMismatch("lax_residual: metric and curve algebras differ");
  }
  const LiftSample s = pc.maurer_cartan(t);
  const Vector r = s.F_dot - bracket_coeffs(*algebra, s.F, s.omega.coeffs);
  return LaxResidual{cm.split().form.norm(r), cm.split().form.norm(cm.split().proj_m * r)};
}

double gelan_residual(const ChainMetric& cm, const ProductCurve& pc, double t) {
  const auto algebra = cm.split().form.algebra();
  const int n = pc.count();
  const Matrix& pm = cm.split().proj_m;

  // Recompute the transports through the public surface so this residual
  // exercises a different summation path than lax_residual.
  std::vector<Vector> u(n);
  for (int i = 0; i < n; ++i) {
    u[i] = pc.transport(i, n - 1, t, pc.generators().X[i]).coeffs;
  }
  std::vector<Vector> r(n);
  r[n - 1] = u[n - 1];
  for (int i = n - 2; i >= 0; --i) r[i] = r[i + 1] + u[i];

  Vector lhs = Vector::Zero(algebra->dim());
  for (int i = 0; i < n; ++i) {
    lhs += apply_A(cm, pm * bracket_coeffs(*algebra, u[i], r[i]));
  }
  const Vector rhs = bracket_coeffs(*algebra, apply_A(cm, pm * r[0]), r[0]);
  return cm.split().form.norm(pm * (lhs - rhs));
}

double energy(const ChainMetric& cm, const ProductCurve& pc, double t) {
  const LiftSample s = pc.maurer_cartan(t);
  const Vector omega_m = cm.split().proj_m * s.omega.coeffs;
  return s.F.dot(cm.split().form.gram() * omega_m);
}

}  // namespace geoprod
