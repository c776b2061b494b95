#include "geoprod/numeric.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace geoprod {

namespace {

void require_square_finite(const Matrix& m, const char* op) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(op) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw DomainError(std::string(op) + ": matrix has non-finite entries");
  }
}

}  // namespace

Matrix mat_exp(const Matrix& m) {
  require_square_finite(m, "mat_exp");
  return m.exp();
}

Matrix mat_log(const Matrix& m) {
  require_square_finite(m, "mat_log");
  // The principal branch exists iff no eigenvalue sits on (-inf, 0].
  Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  const double scale = std::max(1.0, m.norm());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto ev = es.eigenvalues()[i];
    if (ev.real() <= 0.0 && std::abs(ev.imag()) <= 1e-14 * scale) {
      throw BranchError("mat_log: eigenvalue on the closed negative real axis");
    }
  }
  return m.log();
}

SymEig eig_sym(const Matrix& s, double sym_tol) {
  require_square_finite(s, "eig_sym");
  const double defect = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (defect > sym_tol * std::max(1.0, s.cwiseAbs().maxCoeff())) {
    throw SymmetryError("eig_sym: input asymmetric by " + std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (s + s.transpose()));
  if (solver.info() != Eigen::Success) {
    throw Error("eig_sym: eigensolver failed to converge");
  }
  return SymEig{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix fd_derivative(const MatrixCurve& curve, double t, double h) {
  if (!(h > 0.0)) throw DomainError("fd_derivative: step must be positive");
  return (curve(t + h) - curve(t - h)) / (2.0 * h);
}

}  // namespace geoprod
