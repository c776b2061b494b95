#pragma once

#include <memory>
#include <string>
#include <vector>

#include "geoprod/numeric.hpp"

namespace geoprod {

class LieAlgebraBasis;
using AlgebraPtr = std::shared_ptr<const LieAlgebraBasis>;

/// Element of a matrix Lie algebra, stored as coefficients over the
/// algebra's fixed basis.
struct AlgebraVector {
  AlgebraPtr algebra;
  Vector coeffs;

  Matrix matrix() const;
  AlgebraVector& operator+=(const AlgebraVector& rhs);
  AlgebraVector& operator-=(const AlgebraVector& rhs);
  AlgebraVector& operator*=(double s);
};

AlgebraVector operator+(AlgebraVector lhs, const AlgebraVector& rhs);
AlgebraVector operator-(AlgebraVector lhs, const AlgebraVector& rhs);
AlgebraVector operator*(double s, AlgebraVector v);

/// Group element attached to the algebra whose exponentials produced it.
struct GroupElement {
  AlgebraPtr algebra;
  Matrix matrix;
};

/// A matrix Lie algebra presented by a fixed ordered basis.
///
/// Construction computes structure constants and validates closure under the
/// bracket and the Jacobi identity for all basis triples.
class LieAlgebraBasis : public std::enable_shared_from_this<LieAlgebraBasis> {
 public:
  static AlgebraPtr make(std::string name, std::vector<Matrix> basis);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int ambient() const { return ambient_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  const Matrix& basis_matrix(int i) const { return basis_.at(i); }

  /// ad(E_i) expressed in the basis; column j holds the coefficients of [E_i, E_j].
  const Matrix& ad_of_basis(int i) const { return ad_basis_.at(i); }
  /// c[i][j][k] with [E_i, E_j] = sum_k c[i][j][k] E_k.
  double structure_constant(int i, int j, int k) const {
    return ad_basis_.at(i)(k, j);
  }

  /// Expand an ambient matrix in the basis. Throws ClosureError when the
  /// residual exceeds `span_tol` relative to the matrix scale.
  Vector to_coeffs(const Matrix& m, double span_tol = tol::span) const;
  Matrix from_coeffs(const Vector& coeffs) const;

  AlgebraVector element(Vector coeffs) const;
  AlgebraVector zero() const;
  AlgebraVector basis_element(int i) const;
  GroupElement identity() const;

 private:
  LieAlgebraBasis() = default;

  std::string name_;
  int ambient_ = 0;
  std::vector<Matrix> basis_;
  std::vector<Matrix> ad_basis_;
  Matrix frob_gram_;  // Gram matrix of the Frobenius form on the basis
  Eigen::LDLT<Matrix> frob_solver_;
};

/// [X, Y] expanded in the common basis.
AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y);

/// ad(X) as a dim x dim matrix acting on coefficients.
Matrix ad_matrix(const AlgebraVector& x);

/// Ad(g)X = g X g^{-1}, expanded in the basis. A large expansion residual
/// signals a GroupElement that is not in the group and raises ClosureError.
AlgebraVector Ad(const GroupElement& g, const AlgebraVector& x);

/// Killing form tr(ad X ad Y).
double killing_form(const AlgebraVector& x, const AlgebraVector& y);

/// One-parameter subgroup phi_X(t) = exp(tX).
GroupElement one_param(const AlgebraVector& x, double t);

/// Symmetric bilinear form on the algebra, stored by its Gram matrix.
/// Construction validates symmetry, nondegeneracy and ad-invariance.
class InvariantForm {
 public:
  static InvariantForm make(AlgebraPtr algebra, Matrix gram,
                            double invariance_tol = tol::invariance);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Matrix& gram() const { return gram_; }

  double operator()(const Vector& a, const Vector& b) const {
    return a.dot(gram_ * b);
  }
  double norm(const Vector& a) const;

 private:
  InvariantForm(AlgebraPtr algebra, Matrix gram)
      : algebra_(std::move(algebra)), gram_(std::move(gram)) {}

  AlgebraPtr algebra_;
  Matrix gram_;
};

/// Q(X, Y) = -tr(XY), the standard ad-invariant inner product on so(n)
/// (a positive multiple of the negative Killing form).
InvariantForm trace_form(const AlgebraPtr& algebra);

/// so(n) with basis {E_ij - E_ji : i < j} in lexicographic order of (i, j).
AlgebraPtr catalog_so(int n);

/// Indices (into the catalog_so(n) basis) of the copy of so(k) embedded in
/// the lower-right k x k block. Requires 2 <= k <= n.
std::vector<int> catalog_so_block(int n, int k);

/// The trivial subalgebra: an empty index set.
std::vector<int> catalog_trivial(int n);

}  // namespace geoprod
