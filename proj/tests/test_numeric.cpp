#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geoprod/numeric.hpp"
#include "test_support.hpp"

using namespace geoprod;

namespace {

// Independent oracle: brute-force Taylor summation of exp(M). Terms are added
// until they stop changing the partial sum, which is plenty for the moderate
// norms used in these tests.
Matrix series_exp(const Matrix& m, int max_terms = 300) {
  Matrix sum = Matrix::Identity(m.rows(), m.cols());
  Matrix term = sum;
  for (int k = 1; k <= max_terms; ++k) {
    term = (term * m) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * sum.cwiseAbs().maxCoeff()) break;
  }
  return sum;
}

// The plain series cancels badly for large norms; halve the argument until
// the series is well conditioned and square back up.
Matrix series_exp_scaled(const Matrix& m) {
  int halvings = 0;
  double norm = m.norm();
  while (norm > 0.5) {
    norm /= 2.0;
    ++halvings;
  }
  Matrix result = series_exp(m / std::pow(2.0, halvings));
  for (int s = 0; s < halvings; ++s) result = result * result;
  return result;
}

Matrix random_matrix(int n, geoprod::testing::Rng& rng, double scale) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
  return scale * m / m.norm();
}

}  // namespace

TEST_CASE("mat_exp identity and diagonal cases") {
  CHECK((mat_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.5;
  d(1, 1) = -0.25;
  const Matrix e = mat_exp(d);
  CHECK(e(0, 0) == doctest::Approx(std::exp(1.5)).epsilon(1e-14));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-0.25)).epsilon(1e-14));
  CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("mat_exp rotation by pi/2 against the series oracle") {
  Matrix m(2, 2);
  const double theta = M_PI / 2.0;
  m << 0.0, -theta, theta, 0.0;
  const Matrix e = mat_exp(m);

  Matrix expected(2, 2);  // closed form: [[cos, -sin], [sin, cos]]
  expected << 0.0, -1.0, 1.0, 0.0;
  CHECK((e - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((e - series_exp(m)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("mat_exp accuracy contract against the series oracle") {
  geoprod::testing::Rng rng;
  for (double scale : {0.5, 2.0, 5.0, 12.0, 20.0}) {
    const Matrix m = random_matrix(4, rng, scale);
    const Matrix e = mat_exp(m);
    const Matrix ref = series_exp(m);
    CHECK((e - ref).norm() / ref.norm() < 1e-12);
  }
}

TEST_CASE("mat_exp rejects bad input") {
  CHECK_THROWS_AS(mat_exp(Matrix::Zero(2, 3)), DimensionError);
  Matrix nan = Matrix::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(mat_exp(nan), DomainError);
}

TEST_CASE("exp(A) exp(-A) = I") {
  geoprod::testing::Rng rng;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(4, rng, rng.range(0.1, 5.0));
    const Matrix prod = mat_exp(a) * mat_exp(-a);
    CHECK((prod - Matrix::Identity(4, 4)).norm() < 1e-11);
  }
}

TEST_CASE("commuting matrices: exp(A+B) = exp(A) exp(B)") {
  geoprod::testing::Rng rng;
  for (int trial = 0; trial < 10; ++trial) {
    Matrix a = Matrix::Zero(3, 3), b = Matrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      a(i, i) = rng.range(-2.0, 2.0);
      b(i, i) = rng.range(-2.0, 2.0);
    }
    CHECK((mat_exp(a + b) - mat_exp(a) * mat_exp(b)).norm() < 1e-11);
  }
}

TEST_CASE("mat_log inverts mat_exp near the identity") {
  geoprod::testing::Rng rng;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(3, rng, rng.range(0.05, 1.0));
    CHECK((mat_log(mat_exp(a)) - a).norm() < 1e-9);
    CHECK((mat_exp(mat_log(mat_exp(a))) - mat_exp(a)).norm() < 1e-10);
  }
}

TEST_CASE("mat_log branch error on the closed negative real axis") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = -0.5;
  CHECK_THROWS_AS(mat_log(m), BranchError);
  CHECK_THROWS_AS(mat_log(Matrix::Zero(2, 2)), BranchError);
}

TEST_CASE("eig_sym basics") {
  const auto id = eig_sym(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(id.eigenvalues[i] == doctest::Approx(1.0));

  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const auto sorted = eig_sym(d);
  CHECK(sorted.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sorted.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(sorted.eigenvalues[2] == doctest::Approx(3.0));
  // permutation eigenvectors
  CHECK(std::abs(sorted.eigenvectors.col(0)[1]) == doctest::Approx(1.0));
  CHECK(std::abs(sorted.eigenvectors.col(2)[0]) == doctest::Approx(1.0));
}

TEST_CASE("eig_sym reconstruction on random symmetric input") {
  geoprod::testing::Rng rng;
  Matrix s(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) s(i, j) = s(j, i) = rng.normal();
  const auto eig = eig_sym(s);
  const Matrix rebuilt =
      eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.transpose();
  CHECK((rebuilt - s).norm() < 1e-12 * std::max(1.0, s.norm()));
  CHECK((eig.eigenvectors.transpose() * eig.eigenvectors - Matrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("eig_sym rejects asymmetric input") {
  Matrix s = Matrix::Identity(3, 3);
  s(0, 2) = 0.01;
  CHECK_THROWS_AS(eig_sym(s), SymmetryError);
}

TEST_CASE("fd_derivative recovers the generator of exp(tA) at second order") {
  geoprod::testing::Rng rng;
  const Matrix a = random_matrix(3, rng, 1.0);
  auto curve = [&a](double t) { return mat_exp(t * a); };

  double err_coarse = (fd_derivative(curve, 0.0, 1e-3) - a).norm();
  double err_fine = (fd_derivative(curve, 0.0, 1e-4) - a).norm();
  CHECK(err_coarse < 1e-5);
  CHECK(err_fine < 1e-7);
  const double order = std::log10(err_coarse / err_fine);
  CHECK(order >= 1.9);
}

TEST_CASE("fd_derivative validates the step") {
  auto curve = [](double) { return Matrix::Identity(2, 2); };
  CHECK_THROWS_AS(fd_derivative(curve, 0.0, 0.0), DomainError);
}
