#include "geoprod/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace geoprod {

namespace {

// Coefficient-space bracket using the algebra's structure constants.
Vector bracket_coeffs(const LieAlgebraBasis& alg, const Vector& x, const Vector& y) {
  Vector out = Vector::Zero(alg.dim());
  for (int i = 0; i < alg.dim(); ++i) {
    if (x[i] != 0.0) out += x[i] * (alg.ad_of_basis(i) * y);
  }
  return out;
}

// Stabilized (twice-projected) Gram-Schmidt under the form's Gram matrix.
// Appends the Q-orthonormalized candidates that extend `accepted`; discards
// candidates already in the span. A negative squared norm means the form is
// not positive definite in the complement.
Matrix gs_extend(const Matrix& gram, const Matrix& accepted, const Matrix& candidates,
                 int expected_new) {
  const int dim = static_cast<int>(gram.rows());
  Matrix out(dim, expected_new >= 0 ? expected_new : candidates.cols());
  int kept = 0;
  for (int c = 0; c < candidates.cols(); ++c) {
    Vector v = candidates.col(c);
    const double initial = std::sqrt(std::abs(v.dot(gram * v)));
    for (int pass = 0; pass < 2; ++pass) {
      for (int a = 0; a < accepted.cols(); ++a) {
        v -= (accepted.col(a).dot(gram * v)) * accepted.col(a);
      }
      for (int a = 0; a < kept; ++a) {
        v -= (out.col(a).dot(gram * v)) * out.col(a);
      }
    }
    const double nsq = v.dot(gram * v);
    if (nsq < -tol::rank * std::max(1.0, initial * initial)) {
      throw SignatureError("gram_schmidt: form not positive definite on the complement");
    }
    if (nsq <= tol::rank * tol::rank * std::max(1.0, initial * initial)) {
      continue;  // already in the span
    }
    if (kept >= out.cols()) {
      throw ChainError("gram_schmidt: more independent vectors than expected");
    }
    out.col(kept++) = v / std::sqrt(nsq);
  }
  if (expected_new >= 0 && kept != expected_new) {
    throw ChainError("gram_schmidt: complement has dimension " + std::to_string(kept) +
                     ", expected " + std::to_string(expected_new));
  }
  return out.leftCols(kept);
}

Matrix unit_columns(int dim, const std::vector<int>& indices) {
  Matrix cols = Matrix::Zero(dim, static_cast<int>(indices.size()));
  for (size_t c = 0; c < indices.size(); ++c) {
    if (indices[c] < 0 || indices[c] >= dim) {
      throw DimensionError("subalgebra index out of range");
    }
    cols(indices[c], static_cast<int>(c)) = 1.0;
  }
  return cols;
}

void require_subalgebra(const LieAlgebraBasis& alg, const std::vector<int>& indices,
                        const char* what) {
  std::set<int> inside(indices.begin(), indices.end());
  for (int i : indices) {
    for (int j : indices) {
      const Vector c = alg.ad_of_basis(i).col(j);
      for (int k = 0; k < alg.dim(); ++k) {
        if (!inside.count(k) && std::abs(c[k]) > tol::closure) {
          throw ChainError(std::string(what) + ": index set is not closed under the bracket");
        }
      }
    }
  }
}

void require_in_m(const ReductiveSplit& split, const Vector& v, const char* op) {
  if (v.size() != split.dim()) {
    throw DimensionError(std::string(op) + ": coefficient vector has wrong size");
  }
  const double h_part = split.form.norm(split.proj_h * v);
  if (h_part > tol::domain * std::max(1.0, split.form.norm(v))) {
    throw DomainError(std::string(op) + ": vector has a nontrivial h-component (" +
                      std::to_string(h_part) + ")");
  }
}

struct MVectorSampler {
  const ReductiveSplit& split;
  std::mt19937_64 rng;
  std::normal_distribution<double> gauss{0.0, 1.0};

  Vector operator()() {
    Vector coords(split.m_dim());
    for (int i = 0; i < coords.size(); ++i) coords[i] = gauss(rng);
    return split.m_basis * coords;
  }
};

}  // namespace

SubalgebraChain SubalgebraChain::make(AlgebraPtr algebra, std::vector<std::vector<int>> levels) {
  if (!algebra) throw AlgebraMismatch("SubalgebraChain: null algebra");
  if (levels.size() < 2) {
    throw ChainError("SubalgebraChain: need at least h_0 and h_N = g");
  }
  for (auto& level : levels) std::sort(level.begin(), level.end());
  for (size_t l = 0; l + 1 < levels.size(); ++l) {
    if (!std::includes(levels[l + 1].begin(), levels[l + 1].end(), levels[l].begin(),
                       levels[l].end()) ||
        levels[l + 1].size() <= levels[l].size()) {
      throw ChainError("SubalgebraChain: levels must be strictly nested");
    }
  }
  if (static_cast<int>(levels.back().size()) != algebra->dim()) {
    throw ChainError("SubalgebraChain: last level must be the full algebra");
  }
  for (size_t l = 0; l < levels.size(); ++l) {
    require_subalgebra(*algebra, levels[l], "SubalgebraChain");
  }
  return SubalgebraChain(std::move(algebra), std::move(levels));
}

ReductiveSplit reductive_split(const AlgebraPtr& algebra, const std::vector<int>& h_indices,
                               const InvariantForm& form) {
  if (!algebra || form.algebra() != algebra) {
    throw AlgebraMismatch("reductive_split: form and algebra do not match");
  }
  require_subalgebra(*algebra, h_indices, "reductive_split");

  const int dim = algebra->dim();
  const Matrix& gram = form.gram();
  const Matrix h_seed = unit_columns(dim, h_indices);
  const Matrix h_basis =
      gs_extend(gram, Matrix(dim, 0), h_seed, static_cast<int>(h_indices.size()));

  // Complete with ambient basis vectors, in index order, to get a canonical
  // Q-orthonormal basis of the complement.
  Matrix all = Matrix::Identity(dim, dim);
  const Matrix m_basis = gs_extend(gram, h_basis, all, dim - h_basis.cols());

  ReductiveSplit split{form, h_basis, m_basis, h_basis * h_basis.transpose() * gram,
                       m_basis * m_basis.transpose() * gram};

  const double proj_defect =
      (split.proj_h + split.proj_m - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (proj_defect > tol::reductivity) {
    throw SignatureError("reductive_split: projectors do not resolve the identity");
  }
  // Ad(H)m c m, checked infinitesimally: [h, m] c m.
  for (int a = 0; a < split.h_dim(); ++a) {
    for (int x = 0; x < split.m_dim(); ++x) {
      const Vector br = bracket_coeffs(*algebra, split.h_basis.col(a), split.m_basis.col(x));
      if (form.norm(split.proj_h * br) > tol::reductivity * std::max(1.0, form.norm(br))) {
        throw ReductivityError("reductive_split: [h, m] leaves m");
      }
    }
  }
  return split;
}

ChainMetric ChainMetric::finalize(ReductiveSplit split, std::vector<Matrix> eigenbases,
                                  const std::vector<double>& lambdas, bool from_chain) {
  const int n_spaces = static_cast<int>(eigenbases.size());
  if (static_cast<int>(lambdas.size()) != n_spaces) {
    throw MetricError("ChainMetric: need one eigenvalue per eigenspace");
  }
  for (double l : lambdas) {
    if (l == 0.0 || !std::isfinite(l)) {
      throw MetricError("ChainMetric: degenerate metric, every eigenvalue must be nonzero");
    }
  }

  const Matrix& gram = split.form.gram();
  int total = 0;
  for (const auto& b : eigenbases) total += static_cast<int>(b.cols());
  if (total != split.m_dim()) {
    throw MetricError("ChainMetric: eigenspaces do not fill m");
  }
  // Pairwise Q-orthonormality of the union.
  const Matrix overlap = split.m_basis.transpose() * gram * split.m_basis;
  if ((overlap - Matrix::Identity(total, total)).cwiseAbs().maxCoeff() > tol::reductivity) {
    throw MetricError("ChainMetric: eigenspace union is not Q-orthonormal");
  }

  std::vector<Matrix> projectors;
  projectors.reserve(eigenbases.size());
  for (const auto& b : eigenbases) {
    projectors.push_back(b * b.transpose() * gram);
  }

  std::vector<std::string> warnings;
  for (int i = 1; i < n_spaces; ++i) {
    if (lambdas[i] == lambdas[i - 1]) {
      warnings.push_back("equal adjacent eigenvalues lambda_" + std::to_string(i) + " = lambda_" +
                         std::to_string(i + 1) +
                         "; the decomposition is coarser than the eigenspaces of A");
    }
  }

  ChainMetric cm(std::move(split), std::move(eigenbases), std::move(projectors), lambdas,
                 from_chain, std::move(warnings));

  if (check_eigenspace_isotropy(cm) > tol::reductivity) {
    throw ReductivityError("ChainMetric: [h, m_i] leaves m_i");
  }
  if (from_chain) {
    const auto report = check_bracket_condition(cm);
    if (report.max_violation > tol::reductivity) {
      throw ChainError("ChainMetric: bracket condition [m_i, m_j] c m_i failed at pair (" +
                       std::to_string(report.worst_pair.first + 1) + ", " +
                       std::to_string(report.worst_pair.second + 1) + ") with violation " +
                       std::to_string(report.max_violation));
    }
  }
  return cm;
}

ChainMetric ChainMetric::from_chain(const SubalgebraChain& chain, const InvariantForm& form,
                                    const std::vector<double>& lambdas) {
  const auto& algebra = chain.algebra();
  if (form.algebra() != algebra) {
    throw AlgebraMismatch("ChainMetric: form and chain algebras differ");
  }
  const int n_steps = chain.steps();
  if (static_cast<int>(lambdas.size()) != n_steps) {
    throw MetricError("ChainMetric: lambda count must equal the number of chain steps");
  }

  const int dim = algebra->dim();
  const Matrix& gram = form.gram();
  const auto& levels = chain.levels();

  // h_i = h_{i-1} + m_{N-i+1}: the complement of the smallest step lands in
  // the LAST eigenspace. Eigenspaces are produced largest-first below.
  Matrix accepted = gs_extend(gram, Matrix(dim, 0), unit_columns(dim, levels[0]),
                              static_cast<int>(levels[0].size()));
  const Matrix h_basis = accepted;

  std::vector<Matrix> eigenbases(n_steps);
  for (int i = 1; i <= n_steps; ++i) {
    std::vector<int> fresh;
    std::set_difference(levels[i].begin(), levels[i].end(), levels[i - 1].begin(),
                        levels[i - 1].end(), std::back_inserter(fresh));
    const Matrix block = gs_extend(gram, accepted, unit_columns(dim, fresh),
                                   static_cast<int>(fresh.size()));
    eigenbases[n_steps - i] = block;
    Matrix grown(dim, accepted.cols() + block.cols());
    grown << accepted, block;
    accepted = std::move(grown);
  }

  Matrix m_all(dim, dim - h_basis.cols());
  int at = 0;
  for (const auto& b : eigenbases) {
    m_all.middleCols(at, b.cols()) = b;
    at += static_cast<int>(b.cols());
  }

  ReductiveSplit split{form, h_basis, m_all, h_basis * h_basis.transpose() * gram,
                       m_all * m_all.transpose() * gram};
  const double proj_defect =
      (split.proj_h + split.proj_m - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (proj_defect > tol::reductivity) {
    throw SignatureError("ChainMetric: projectors do not resolve the identity");
  }
  return finalize(std::move(split), std::move(eigenbases), lambdas, /*from_chain=*/true);
}

ChainMetric ChainMetric::assemble(ReductiveSplit split, const std::vector<Matrix>& eigenbases,
                                  const std::vector<double>& lambdas) {
  // Q-normalize each block; orthogonality BETWEEN blocks is verified later,
  // never imposed, so a genuinely skew assembly is rejected rather than bent.
  const Matrix& gram = split.form.gram();
  std::vector<Matrix> ortho;
  ortho.reserve(eigenbases.size());
  int total = 0;
  for (const auto& b : eigenbases) {
    if (b.rows() != split.dim()) throw DimensionError("assemble: eigenbasis has wrong height");
    ortho.push_back(gs_extend(gram, Matrix(split.dim(), 0), b, static_cast<int>(b.cols())));
    total += static_cast<int>(b.cols());
  }
  Matrix m_all(split.dim(), total);
  int at = 0;
  for (const auto& b : ortho) {
    m_all.middleCols(at, b.cols()) = b;
    at += static_cast<int>(b.cols());
  }
  split.m_basis = m_all;
  split.proj_m = m_all * m_all.transpose() * gram;
  return finalize(std::move(split), std::move(ortho), lambdas, /*from_chain=*/false);
}

Vector ChainMetric::m_coords_to_algebra(const Vector& coords) const {
  if (coords.size() != m_dim()) {
    throw DimensionError("m_coords_to_algebra: expected " + std::to_string(m_dim()) +
                         " coordinates, got " + std::to_string(coords.size()));
  }
  return split_.m_basis * coords;
}

Vector ChainMetric::algebra_to_m_coords(const Vector& coeffs) const {
  require_in_m(split_, coeffs, "algebra_to_m_coords");
  return split_.m_basis.transpose() * split_.form.gram() * coeffs;
}

Vector apply_A(const ChainMetric& cm, const Vector& v) {
  require_in_m(cm.split(), v, "apply_A");
  Vector out = Vector::Zero(v.size());
  for (int i = 0; i < cm.count(); ++i) out += cm.lambda(i) * (cm.projector(i) * v);
  return out;
}

Vector apply_A_inv(const ChainMetric& cm, const Vector& v) {
  require_in_m(cm.split(), v, "apply_A_inv");
  Vector out = Vector::Zero(v.size());
  for (int i = 0; i < cm.count(); ++i) out += (cm.projector(i) * v) / cm.lambda(i);
  return out;
}

Vector project_i(const ChainMetric& cm, int i, const Vector& v) {
  if (i < 0 || i >= cm.count()) throw IndexError("project_i: eigenspace index out of range");
  require_in_m(cm.split(), v, "project_i");
  return cm.projector(i) * v;
}

double metric_inner(const ChainMetric& cm, const Vector& v, const Vector& w) {
  require_in_m(cm.split(), w, "metric_inner");
  return apply_A(cm, v).dot(cm.split().form.gram() * w);
}

double base_inner(const ReductiveSplit& split, const Vector& v, const Vector& w) {
  require_in_m(split, v, "base_inner");
  require_in_m(split, w, "base_inner");
  return split.form(v, w);
}

NaturalReductivityReport check_natural_reductivity(const ReductiveSplit& split, int draws,
                                                   std::uint64_t seed) {
  const auto& alg = *split.form.algebra();
  const Matrix& gram = split.form.gram();
  double worst = 0.0;

  auto violation = [&](const Vector& x, const Vector& y, const Vector& z) {
    const Vector xy_m = split.proj_m * bracket_coeffs(alg, x, y);
    const Vector xz_m = split.proj_m * bracket_coeffs(alg, x, z);
    return std::abs(xy_m.dot(gram * z) + y.dot(gram * xz_m));
  };

  for (int a = 0; a < split.m_dim(); ++a) {
    for (int b = 0; b < split.m_dim(); ++b) {
      for (int c = 0; c < split.m_dim(); ++c) {
        worst = std::max(worst,
                         violation(split.m_basis.col(a), split.m_basis.col(b), split.m_basis.col(c)));
      }
    }
  }
  MVectorSampler sample{split, std::mt19937_64(seed)};
  for (int d = 0; d < draws; ++d) {
    worst = std::max(worst, violation(sample(), sample(), sample()));
  }
  return NaturalReductivityReport{worst};
}

BracketConditionReport check_bracket_condition(const ChainMetric& cm) {
  const auto& alg = *cm.split().form.algebra();
  BracketConditionReport report;
  for (int i = 0; i < cm.count(); ++i) {
    const Matrix outside = Matrix::Identity(cm.dim(), cm.dim()) - cm.projector(i);
    for (int j = i + 1; j < cm.count(); ++j) {
      for (int a = 0; a < cm.eigdim(i); ++a) {
        for (int b = 0; b < cm.eigdim(j); ++b) {
          const Vector br =
              bracket_coeffs(alg, cm.eigenbasis(i).col(a), cm.eigenbasis(j).col(b));
          const double v = cm.split().form.norm(outside * br);
          if (v > report.max_violation) {
            report.max_violation = v;
            report.worst_pair = {i, j};
          }
        }
      }
    }
  }
  return report;
}

double check_lem2(const ChainMetric& cm, const AlgebraVector& x, const AlgebraVector& w) {
  if (x.algebra != cm.split().form.algebra() || w.algebra != x.algebra) {
    throw AlgebraMismatch("check_lem2: algebra mismatch");
  }
  const auto& alg = *x.algebra;
  const Matrix& pm = cm.split().proj_m;
  const Vector x_m = pm * x.coeffs;
  const Vector w_m = pm * w.coeffs;
  const Vector lhs_arg = pm * bracket_coeffs(alg, w.coeffs, x.coeffs);
  const Vector rhs_arg = pm * bracket_coeffs(alg, w_m, x.coeffs);
  return std::abs(metric_inner(cm, x_m, lhs_arg) - metric_inner(cm, x_m, rhs_arg));
}

double check_isotropy_skew(const ReductiveSplit& split) {
  const auto& alg = *split.form.algebra();
  const Matrix& gram = split.form.gram();
  double worst = 0.0;
  for (int a = 0; a < split.h_dim(); ++a) {
    for (int x = 0; x < split.m_dim(); ++x) {
      const Vector ax = split.proj_m * bracket_coeffs(alg, split.h_basis.col(a), split.m_basis.col(x));
      for (int y = 0; y < split.m_dim(); ++y) {
        const Vector ay =
            split.proj_m * bracket_coeffs(alg, split.h_basis.col(a), split.m_basis.col(y));
        const double v = std::abs(ax.dot(gram * split.m_basis.col(y)) +
                                  split.m_basis.col(x).dot(gram * ay));
        worst = std::max(worst, v);
      }
    }
  }
  return worst;
}

double check_equivariance(const ChainMetric& cm) {
  const auto& split = cm.split();
  const auto& alg = *split.form.algebra();
  double worst = 0.0;
  for (int a = 0; a < split.h_dim(); ++a) {
    for (int x = 0; x < split.m_dim(); ++x) {
      const Vector mx = split.m_basis.col(x);
      const Vector ad_then_A = apply_A(cm, split.proj_m * bracket_coeffs(alg, split.h_basis.col(a), mx));
      const Vector A_then_ad =
          split.proj_m * bracket_coeffs(alg, split.h_basis.col(a), apply_A(cm, mx));
      worst = std::max(worst, split.form.norm(ad_then_A - A_then_ad));
    }
  }
  return worst;
}

double check_eigenspace_isotropy(const ChainMetric& cm) {
  const auto& split = cm.split();
  const auto& alg = *split.form.algebra();
  double worst = 0.0;
  for (int i = 0; i < cm.count(); ++i) {
    const Matrix outside = Matrix::Identity(cm.dim(), cm.dim()) - cm.projector(i);
    for (int a = 0; a < split.h_dim(); ++a) {
      for (int x = 0; x < cm.eigdim(i); ++x) {
        const Vector br = bracket_coeffs(alg, split.h_basis.col(a), cm.eigenbasis(i).col(x));
        worst = std::max(worst, split.form.norm(outside * br));
      }
    }
  }
  return worst;
}

}  // namespace geoprod
