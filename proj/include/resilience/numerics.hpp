#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace resilience {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class NormOrder { One, Two, Inf };

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// eps * max(rows, cols) * sigma_max are treated as zero, so rank-deficient
/// inputs are handled without special casing.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> pinv(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::Scalar eps = typename Derived::Scalar(1e-12)) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const Scalar sigma_max = sigma.size() > 0 ? sigma(0) : Scalar(0);
  const Scalar cutoff = eps * Scalar(std::max(m.rows(), m.cols())) * sigma_max;

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> inv_sigma(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    inv_sigma(i) = sigma(i) > cutoff ? Scalar(1) / sigma(i) : Scalar(0);

  return svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose();
}

/// p-norm of a vector for p in {1, 2, inf}.
double vec_norm(const Eigen::Ref<const Vector>& x, NormOrder p);

/// Induced matrix norm: max column abs sum (One) or max row abs sum (Inf).
/// NormOrder::Two is rejected.
double induced_norm(const Eigen::Ref<const Matrix>& m, NormOrder p);

/// Eigendecomposition of a symmetric matrix with eigenvalues sorted
/// descending; column i of eigenvectors pairs with eigenvalues(i).
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Throws std::invalid_argument if s is not symmetric within symmetry_tol
/// (relative to max(1, max |entry|)).
SpectralDecomposition sym_eig(const Eigen::Ref<const Matrix>& s,
                              double symmetry_tol = 1e-10);

/// Largest eigenvalue of a symmetric matrix (may be negative).
double lambda_max_sym(const Eigen::Ref<const Matrix>& s,
                      double symmetry_tol = 1e-10);

}  // namespace resilience
