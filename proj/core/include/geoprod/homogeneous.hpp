#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "geoprod/lie_algebra.hpp"

namespace geoprod {

/// Nested subalgebras h_0 c h_1 c ... c h_N = g, each given as an ascending
/// list of basis-element indices of g. h_0 may be empty; the last level must
/// be the full algebra.
class SubalgebraChain {
 public:
  static SubalgebraChain make(AlgebraPtr algebra, std::vector<std::vector<int>> levels);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<std::vector<int>>& levels() const { return levels_; }
  /// Number of chain steps N.
  int steps() const { return static_cast<int>(levels_.size()) - 1; }

 private:
  SubalgebraChain(AlgebraPtr algebra, std::vector<std::vector<int>> levels)
      : algebra_(std::move(algebra)), levels_(std::move(levels)) {}

  AlgebraPtr algebra_;
  std::vector<std::vector<int>> levels_;
};

/// Q-orthogonal decomposition g = h + m with Ad(H)m in m. Subspace bases are
/// stored as columns of coefficient vectors, Q-orthonormal; projectors act on
/// coefficients.
struct ReductiveSplit {
  InvariantForm form;
  Matrix h_basis;  // dim x dim_h
  Matrix m_basis;  // dim x dim_m
  Matrix proj_h;   // dim x dim
  Matrix proj_m;   // dim x dim

  int dim() const { return static_cast<int>(proj_h.rows()); }
  int h_dim() const { return static_cast<int>(h_basis.cols()); }
  int m_dim() const { return static_cast<int>(m_basis.cols()); }
};

/// m = Q-orthogonal complement of the subalgebra spanned by `h_indices`.
/// Throws SignatureError when Q is not positive definite on the complement
/// and ReductivityError when [h, m] leaves m.
ReductiveSplit reductive_split(const AlgebraPtr& algebra, const std::vector<int>& h_indices,
                               const InvariantForm& form);

/// The metric endomorphism A = lambda_1 Id|m_1 + ... + lambda_N Id|m_N over a
/// Q-orthogonal eigenspace decomposition of m.
///
/// Chain-built instances order the eigenspaces so that m_1 complements
/// h_{N-1} in g (the largest step) and m_N complements h_0 in h_1 (the
/// smallest). That orientation is what makes [m_i, m_j] c m_i for i < j hold.
class ChainMetric {
 public:
  /// Construct from a subgroup chain. Verifies every structural property,
  /// including the bracket condition, which holds by construction here.
  static ChainMetric from_chain(const SubalgebraChain& chain, const InvariantForm& form,
                                const std::vector<double>& lambdas);

  /// Construct from hand-picked eigenspace bases (columns, in g-coefficients).
  /// Orthogonality, completeness and isotropy invariance are enforced; the
  /// bracket condition is NOT, and the instance is flagged accordingly.
  static ChainMetric assemble(ReductiveSplit split, const std::vector<Matrix>& eigenbases,
                              const std::vector<double>& lambdas);

  const ReductiveSplit& split() const { return split_; }
  int count() const { return static_cast<int>(lambdas_.size()); }
  double lambda(int i) const { return lambdas_.at(i); }
  const std::vector<double>& lambdas() const { return lambdas_; }
  const Matrix& eigenbasis(int i) const { return eigenbases_.at(i); }
  const Matrix& projector(int i) const { return projectors_.at(i); }
  int eigdim(int i) const { return static_cast<int>(eigenbases_.at(i).cols()); }
  bool built_from_chain() const { return from_chain_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  int dim() const { return split_.dim(); }
  int m_dim() const { return split_.m_dim(); }
  /// Canonical ordered m-basis: the concatenated eigenspace bases.
  const Matrix& m_basis() const { return split_.m_basis; }

  /// Map coordinates in the canonical m-basis to algebra coefficients.
  Vector m_coords_to_algebra(const Vector& coords) const;
  /// Inverse of m_coords_to_algebra for vectors lying in m.
  Vector algebra_to_m_coords(const Vector& coeffs) const;

 private:
  ChainMetric(ReductiveSplit split, std::vector<Matrix> eigenbases,
              std::vector<Matrix> projectors, std::vector<double> lambdas, bool from_chain,
              std::vector<std::string> warnings)
      : split_(std::move(split)),
        eigenbases_(std::move(eigenbases)),
        projectors_(std::move(projectors)),
        lambdas_(std::move(lambdas)),
        from_chain_(from_chain),
        warnings_(std::move(warnings)) {}

  static ChainMetric finalize(ReductiveSplit split, std::vector<Matrix> eigenbases,
                              const std::vector<double>& lambdas, bool from_chain);

  ReductiveSplit split_;
  std::vector<Matrix> eigenbases_;
  std::vector<Matrix> projectors_;
  std::vector<double> lambdas_;
  bool from_chain_ = false;
  std::vector<std::string> warnings_;
};

/// A v for v in m (h-component must be below tol::domain).
Vector apply_A(const ChainMetric& cm, const Vector& v);
/// A^{-1} v for v in m.
Vector apply_A_inv(const ChainMetric& cm, const Vector& v);
/// pi_i v, the component of v in the i-th eigenspace (0-based i).
Vector project_i(const ChainMetric& cm, int i, const Vector& v);

/// <v, w> = <A v, w>_0, the (possibly indefinite) deformed inner product.
double metric_inner(const ChainMetric& cm, const Vector& v, const Vector& w);
/// <v, w>_0 = Q(v, w) restricted to m.
double base_inner(const ReductiveSplit& split, const Vector& v, const Vector& w);

struct NaturalReductivityReport {
  double max_violation = 0.0;
};

/// Max violation of <[X,Y]_m, Z>_0 + <Y, [X,Z]_m>_0 = 0 over all m-basis
/// triples plus `draws` seeded random triples.
NaturalReductivityReport check_natural_reductivity(const ReductiveSplit& split, int draws = 100,
                                                   std::uint64_t seed = 42);

struct BracketConditionReport {
  double max_violation = 0.0;
  std::pair<int, int> worst_pair{-1, -1};  // 0-based (i, j), i < j
};

/// Max norm of the component of [m_i, m_j] outside m_i over i < j.
BracketConditionReport check_bracket_condition(const ChainMetric& cm);

/// |<X_m, [W,X]_m> - <X_m, [W_m,X]_m>| for arbitrary X, W in g, with <,>
/// the deformed product of `cm`.
double check_lem2(const ChainMetric& cm, const AlgebraVector& x, const AlgebraVector& w);

/// Max violation of <[a,x], y>_0 + <x, [a,y]>_0 = 0 for a in h, x, y in m.
double check_isotropy_skew(const ReductiveSplit& split);

/// Max norm of A([a,x]) - [a, A x] over the h- and m-bases (equivariance of A).
double check_equivariance(const ChainMetric& cm);

/// Max norm of the component of [a, x] outside m_i, for a in h and x in m_i.
double check_eigenspace_isotropy(const ChainMetric& cm);

}  // namespace geoprod
