#include "geoprod/lie_algebra.hpp"

#include <cmath>
#include <utility>

namespace geoprod {

namespace {

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b, const char* op) {
  if (!a || !b || a != b) {
    throw AlgebraMismatch(std::string(op) + ": operands belong to different algebras");
  }
}

}  // namespace

Matrix AlgebraVector::matrix() const { return algebra->from_coeffs(coeffs); }

AlgebraVector& AlgebraVector::operator+=(const AlgebraVector& rhs) {
  require_same_algebra(algebra, rhs.algebra, "operator+");
  coeffs += rhs.coeffs;
  return *this;
}

AlgebraVector& AlgebraVector::operator-=(const AlgebraVector& rhs) {
  require_same_algebra(algebra, rhs.algebra, "operator-");
  coeffs -= rhs.coeffs;
  return *this;
}

AlgebraVector& AlgebraVector::operator*=(double s) {
  coeffs *= s;
  return *this;
}

AlgebraVector operator+(AlgebraVector lhs, const AlgebraVector& rhs) { return lhs += rhs; }
AlgebraVector operator-(AlgebraVector lhs, const AlgebraVector& rhs) { return lhs -= rhs; }
AlgebraVector operator*(double s, AlgebraVector v) { return v *= s; }

AlgebraPtr LieAlgebraBasis::make(std::string name, std::vector<Matrix> basis) {
  if (basis.empty()) throw DimensionError("LieAlgebraBasis: empty basis");
  auto alg = std::shared_ptr<LieAlgebraBasis>(new LieAlgebraBasis());
  alg->name_ = std::move(name);
  alg->ambient_ = static_cast<int>(basis.front().rows());
  for (const auto& b : basis) {
    if (b.rows() != alg->ambient_ || b.cols() != alg->ambient_) {
      throw DimensionError("LieAlgebraBasis: basis matrices must share one square shape");
    }
    if (!b.allFinite()) throw DomainError("LieAlgebraBasis: non-finite basis entry");
  }
  alg->basis_ = std::move(basis);

  const int dim = alg->dim();
  alg->frob_gram_.resize(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      const double v = (alg->basis_[i].transpose() * alg->basis_[j]).trace();
      alg->frob_gram_(i, j) = v;
      alg->frob_gram_(j, i) = v;
    }
  }
  alg->frob_solver_.compute(alg->frob_gram_);
  if (alg->frob_solver_.info() != Eigen::Success ||
      std::abs(alg->frob_gram_.determinant()) < tol::degenerate) {
    throw ClosureError("LieAlgebraBasis: basis matrices are linearly dependent");
  }

  // Structure constants, with bracket closure enforced along the way.
  alg->ad_basis_.assign(dim, Matrix::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const Matrix br = alg->basis_[i] * alg->basis_[j] - alg->basis_[j] * alg->basis_[i];
      alg->ad_basis_[i].col(j) = alg->to_coeffs(br, tol::closure);
    }
  }

  // Jacobi identity over all basis triples, evaluated in coefficient space:
  // [[Ei,Ej],Ek] + [[Ej,Ek],Ei] + [[Ek,Ei],Ej] = 0, with [v, E_a] = -ad(E_a) v.
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const Vector cij = alg->ad_basis_[i].col(j);
      for (int k = 0; k < dim; ++k) {
        Vector jac = -(alg->ad_basis_[k] * cij);
        jac -= alg->ad_basis_[i] * alg->ad_basis_[j].col(k);
        jac -= alg->ad_basis_[j] * alg->ad_basis_[k].col(i);
        if (jac.cwiseAbs().maxCoeff() > tol::closure * 10) {
          throw ClosureError("LieAlgebraBasis: Jacobi identity violated");
        }
      }
    }
  }
  return alg;
}

Vector LieAlgebraBasis::to_coeffs(const Matrix& m, double span_tol) const {
  if (m.rows() != ambient_ || m.cols() != ambient_) {
    throw DimensionError("to_coeffs: wrong ambient size");
  }
  Vector rhs(dim());
  for (int i = 0; i < dim(); ++i) {
    rhs[i] = (basis_[i].transpose() * m).trace();
  }
  Vector coeffs = frob_solver_.solve(rhs);
  const double scale = std::max(1.0, m.norm());
  if ((from_coeffs(coeffs) - m).norm() > span_tol * scale) {
    throw ClosureError(name_ + ": matrix lies outside the algebra span");
  }
  return coeffs;
}

Matrix LieAlgebraBasis::from_coeffs(const Vector& coeffs) const {
  if (coeffs.size() != dim()) throw DimensionError("from_coeffs: wrong coefficient count");
  Matrix m = Matrix::Zero(ambient_, ambient_);
  for (int i = 0; i < dim(); ++i) m += coeffs[i] * basis_[i];
  return m;
}

AlgebraVector LieAlgebraBasis::element(Vector coeffs) const {
  if (coeffs.size() != dim()) throw DimensionError("element: wrong coefficient count");
  if (!coeffs.allFinite()) throw DomainError("element: non-finite coefficients");
  return AlgebraVector{shared_from_this(), std::move(coeffs)};
}

AlgebraVector LieAlgebraBasis::zero() const {
  return AlgebraVector{shared_from_this(), Vector::Zero(dim())};
}

AlgebraVector LieAlgebraBasis::basis_element(int i) const {
  Vector c = Vector::Zero(dim());
  c[i] = 1.0;
  return AlgebraVector{shared_from_this(), std::move(c)};
}

GroupElement LieAlgebraBasis::identity() const {
  return GroupElement{shared_from_this(), Matrix::Identity(ambient_, ambient_)};
}

AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) {
  require_same_algebra(x.algebra, y.algebra, "bracket");
  return AlgebraVector{x.algebra, ad_matrix(x) * y.coeffs};
}

Matrix ad_matrix(const AlgebraVector& x) {
  const auto& alg = *x.algebra;
  Matrix ad = Matrix::Zero(alg.dim(), alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    if (x.coeffs[i] != 0.0) ad += x.coeffs[i] * alg.ad_of_basis(i);
  }
  return ad;
}

AlgebraVector Ad(const GroupElement& g, const AlgebraVector& x) {
  require_same_algebra(g.algebra, x.algebra, "Ad");
  const Matrix& gm = g.matrix;
  // g X g^{-1} via an LU solve from the right.
  const Matrix gx = gm * x.matrix();
  const Matrix res = gm.transpose().partialPivLu().solve(gx.transpose()).transpose();
  return AlgebraVector{x.algebra, x.algebra->to_coeffs(res, tol::span)};
}

double killing_form(const AlgebraVector& x, const AlgebraVector& y) {
  require_same_algebra(x.algebra, y.algebra, "killing_form");
  return (ad_matrix(x) * ad_matrix(y)).trace();
}

GroupElement one_param(const AlgebraVector& x, double t) {
  return GroupElement{x.algebra, mat_exp(t * x.matrix())};
}

InvariantForm InvariantForm::make(AlgebraPtr algebra, Matrix gram, double invariance_tol) {
  if (!algebra) throw AlgebraMismatch("InvariantForm: null algebra");
  const int dim = algebra->dim();
  if (gram.rows() != dim || gram.cols() != dim) {
    throw DimensionError("InvariantForm: Gram matrix has wrong size");
  }
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() >
      tol::symmetry * std::max(1.0, gram.cwiseAbs().maxCoeff())) {
    throw SymmetryError("InvariantForm: Gram matrix not symmetric");
  }
  if (std::abs(gram.determinant()) < tol::degenerate) {
    throw SignatureError("InvariantForm: degenerate form");
  }
  // Infinitesimal Ad-invariance: Q([Ei,Ej],Ek) + Q(Ej,[Ei,Ek]) = 0.
  for (int i = 0; i < dim; ++i) {
    const Matrix& adi = algebra->ad_of_basis(i);
    const Matrix defect = adi.transpose() * gram + gram * adi;
    if (defect.cwiseAbs().maxCoeff() > invariance_tol * std::max(1.0, gram.norm())) {
      throw ClosureError("InvariantForm: form is not ad-invariant");
    }
  }
  return InvariantForm(std::move(algebra), std::move(gram));
}

double InvariantForm::norm(const Vector& a) const {
  const double q = a.dot(gram_ * a);
  // Catalog forms are positive definite; clamp roundoff.
  return std::sqrt(std::max(q, 0.0));
}

InvariantForm trace_form(const AlgebraPtr& algebra) {
  if (!algebra) throw AlgebraMismatch("trace_form: null algebra");
  const int dim = algebra->dim();
  Matrix gram(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      const double v = -(algebra->basis_matrix(i) * algebra->basis_matrix(j)).trace();
      gram(i, j) = v;
      gram(j, i) = v;
    }
  }
  try {
    return InvariantForm::make(algebra, std::move(gram));
  } catch (const Error& e) {
    throw UnsupportedError(algebra->name() +
                           ": no valid trace form for this algebra (" + e.what() + ")");
  }
}

AlgebraPtr catalog_so(int n) {
  if (n < 2) throw DimensionError("catalog_so: need n >= 2");
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      basis.push_back(std::move(e));
    }
  }
  return LieAlgebraBasis::make("so(" + std::to_string(n) + ")", std::move(basis));
}

std::vector<int> catalog_so_block(int n, int k) {
  if (k < 2 || k > n) throw DimensionError("catalog_so_block: need 2 <= k <= n");
  std::vector<int> indices;
  indices.reserve(static_cast<size_t>(k) * (k - 1) / 2);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++idx) {
      if (i >= n - k && j >= n - k) indices.push_back(idx);
    }
  }
  return indices;
}

std::vector<int> catalog_trivial(int) { return {}; }

}  // namespace geoprod
