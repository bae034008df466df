#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resilience/numerics.hpp"

#include <random>

using namespace resilience;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = unif(rng);
  return m;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("pinv of identity and diagonal matrices") {
  CHECK(max_abs(pinv(Matrix::Identity(2, 2)) - Matrix::Identity(2, 2)) < 1e-14);

  Matrix d(2, 2);
  d << 2.0, 0.0, 0.0, 0.0;
  Matrix expected(2, 2);
  expected << 0.5, 0.0, 0.0, 0.0;
  CHECK(max_abs(pinv(d) - expected) < 1e-14);
}

TEST_CASE("pinv of the robot input matrix satisfies the Penrose identities") {
  Matrix b(2, 3);
  b << 2.0, 1.0, 1.0, 0.2, -1.0, 1.0;
  const Matrix bp = pinv(b);
  REQUIRE(bp.rows() == 3);
  REQUIRE(bp.cols() == 2);

  const double tol = 1e-9 * std::max(1.0, max_abs(b));
  CHECK(max_abs(b * bp * b - b) < tol);
  CHECK(max_abs(bp * b * bp - bp) < tol);
  CHECK(max_abs((b * bp) - (b * bp).transpose()) < tol);
  CHECK(max_abs((bp * b) - (bp * b).transpose()) < tol);

  // Independent pseudoinverse route: rank-revealing complete orthogonal
  // decomposition instead of the SVD used by pinv.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(b);
  CHECK(max_abs(bp - cod.pseudoInverse()) < 1e-12);
}

TEST_CASE("pinv handles random and rank-deficient matrices up to 8x8") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const int rows = dim(rng), cols = dim(rng);
    Matrix m;
    if (coin(rng) < 0.4) {
      const int rank = std::max(1, std::min(rows, cols) - 1);
      m = random_matrix(rng, rows, rank) * random_matrix(rng, rank, cols);
    } else {
      m = random_matrix(rng, rows, cols);
    }
    const Matrix mp = pinv(m);
    const double tol = 1e-9 * std::max(1.0, max_abs(m));
    CHECK(max_abs(m * mp * m - m) < tol);
    CHECK(max_abs(mp * m * mp - mp) < tol);
    CHECK(max_abs((m * mp) - (m * mp).transpose()) < tol);
    CHECK(max_abs((mp * m) - (mp * m).transpose()) < tol);
  }
}

TEST_CASE("full-row-rank pinv is a right inverse") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const int rows = 1 + static_cast<int>(k % 4);
    const int cols = rows + 1 + (k % 3);
    Matrix m = random_matrix(rng, rows, cols);
    if (Eigen::JacobiSVD<Matrix>(m).singularValues().minCoeff() < 1e-3) continue;
    CHECK(max_abs(m * pinv(m) - Matrix::Identity(rows, rows)) < 1e-9);
  }
}

TEST_CASE("vec_norm matches the standard p-norms") {
  Vector x(2);
  x << 3.0, -4.0;
  CHECK(vec_norm(x, NormOrder::Two) == doctest::Approx(5.0));
  CHECK(vec_norm(x, NormOrder::Inf) == doctest::Approx(4.0));
  CHECK(vec_norm(x, NormOrder::One) == doctest::Approx(7.0));
}

TEST_CASE("induced_norm takes column and row abs sums") {
  Matrix a(3, 3);
  a << -0.9967, 0.0, 0.6176, 0.0, -0.5057, 0.0, -0.0939, 0.0, -0.2127;
  CHECK(induced_norm(a, NormOrder::Inf) == doctest::Approx(1.6143).epsilon(1e-12));

  CHECK(induced_norm(Matrix::Identity(4, 4), NormOrder::One) == doctest::Approx(1.0));
  CHECK(induced_norm(Matrix::Identity(4, 4), NormOrder::Inf) == doctest::Approx(1.0));

  Matrix m(2, 2);
  m << 1.0, -2.0, 3.0, 4.0;
  CHECK(induced_norm(m, NormOrder::One) == doctest::Approx(6.0));
  CHECK_THROWS_AS(induced_norm(m, NormOrder::Two), std::invalid_argument);
}

TEST_CASE("sym_eig sorts eigenvalues descending with orthonormal vectors") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  const auto spec = sym_eig(d);
  CHECK(spec.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(spec.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(std::abs(spec.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(spec.eigenvectors(0, 1)) == doctest::Approx(1.0));

  const auto scalar = sym_eig(Matrix::Constant(1, 1, 2.0));
  CHECK(scalar.eigenvalues(0) == doctest::Approx(2.0));
  CHECK(std::abs(scalar.eigenvectors(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig reconstructs random symmetric matrices") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 25; ++k) {
    const Matrix half = random_matrix(rng, 4, 4);
    const Matrix s = half * half.transpose();
    const auto spec = sym_eig(s);

    CHECK(max_abs(spec.eigenvectors.transpose() * spec.eigenvectors -
                  Matrix::Identity(4, 4)) < 1e-10);
    const Matrix rebuilt =
        spec.eigenvectors * spec.eigenvalues.asDiagonal() * spec.eigenvectors.transpose();
    CHECK(max_abs(rebuilt - s) < 1e-9 * std::max(1.0, max_abs(s)));
    for (int i = 1; i < 4; ++i) CHECK(spec.eigenvalues(i - 1) >= spec.eigenvalues(i));
  }
}

TEST_CASE("sym_eig rejects asymmetric input") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(sym_eig(m), std::invalid_argument);
  CHECK_THROWS_AS(lambda_max_sym(m), std::invalid_argument);
}

TEST_CASE("Rayleigh inequality brackets random quadratic forms") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const Matrix half = random_matrix(rng, 5, 5);
  const Matrix s = 0.5 * (half + half.transpose());
  const auto spec = sym_eig(s);
  const double lo = spec.eigenvalues(4), hi = spec.eigenvalues(0);
  for (int k = 0; k < 100; ++k) {
    Vector x(5);
    for (int i = 0; i < 5; ++i) x(i) = unif(rng);
    const double q = x.dot(s * x);
    CHECK(q >= lo * x.squaredNorm() - 1e-10);
    CHECK(q <= hi * x.squaredNorm() + 1e-10);
  }
}

TEST_CASE("lambda_max_sym handles signs and cross-checks sym_eig") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  CHECK(lambda_max_sym(d) == doctest::Approx(3.0));
  CHECK(lambda_max_sym(-Matrix::Identity(3, 3)) == doctest::Approx(-1.0));

  // Energy-gap matrix of the robot example: positive largest eigenvalue.
  Matrix b(2, 3);
  b << 2.0, 1.0, 1.0, 0.2, -1.0, 1.0;
  const Matrix bc = b.leftCols(2);
  const Matrix bp = pinv(b), bcp = pinv(bc);
  const Matrix gap = bcp.transpose() * bcp - bp.transpose() * bp;
  const double lam = lambda_max_sym(gap);
  CHECK(lam > 0.0);
  CHECK(lam == doctest::Approx(sym_eig(gap).eigenvalues(0)).epsilon(1e-12));
  CHECK(lam == doctest::Approx(0.5823709703902358).epsilon(1e-10));
}
