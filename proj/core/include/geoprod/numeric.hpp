#pragma once

#include <Eigen/Dense>
#include <functional>

#include "geoprod/errors.hpp"

namespace geoprod {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default tolerances. Every checker takes these as defaults so they can be
/// tuned in one place when moving to larger groups.
namespace tol {
/// Closure of brackets / expansions in a basis.
inline constexpr double closure = 1e-12;
/// Membership of Ad-transported vectors in the algebra span.
inline constexpr double span = 1e-11;
/// Symmetry of inputs to the symmetric eigensolver.
inline constexpr double symmetry = 1e-12;
/// Ad-invariance of bilinear forms.
inline constexpr double invariance = 1e-12;
/// [h, m] \subseteq m and related isotropy checks.
inline constexpr double reductivity = 1e-11;
/// h-component allowed on vectors that must lie in m.
inline constexpr double domain = 1e-11;
/// Nondegeneracy of a form's Gram determinant.
inline constexpr double degenerate = 1e-12;
/// Gram-Schmidt span rejection.
inline constexpr double rank = 1e-10;
}  // namespace tol

/// exp(M) for square M. Relative accuracy better than 1e-12 for ||M|| <= 20.
Matrix mat_exp(const Matrix& m);

/// Principal logarithm. Intended for small perturbations of the identity;
/// exp(mat_log(M)) reproduces M to 1e-10 inside the branch domain.
/// Throws BranchError when an eigenvalue lies on the closed negative real axis.
Matrix mat_log(const Matrix& m);

struct SymEig {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns, S * V = V * diag(eigenvalues)
};

/// Symmetric eigendecomposition. Input must be symmetric to `sym_tol`.
SymEig eig_sym(const Matrix& s, double sym_tol = tol::symmetry);

using MatrixCurve = std::function<Matrix(double)>;

/// Central difference (curve(t+h) - curve(t-h)) / 2h, O(h^2) accurate.
Matrix fd_derivative(const MatrixCurve& curve, double t, double h);

}  // namespace geoprod
