#include "resilience/numerics.hpp"

namespace resilience {

double vec_norm(const Eigen::Ref<const Vector>& x, NormOrder p) {
  switch (p) {
    case NormOrder::One:
      return x.lpNorm<1>();
    case NormOrder::Two:
      return x.norm();
    case NormOrder::Inf:
      return x.size() > 0 ? x.lpNorm<Eigen::Infinity>() : 0.0;
  }
  throw std::invalid_argument("vec_norm: unknown norm order");
}

double induced_norm(const Eigen::Ref<const Matrix>& m, NormOrder p) {
  if (m.size() == 0) return 0.0;
  switch (p) {
    case NormOrder::One:
      return m.cwiseAbs().colwise().sum().maxCoeff();
    case NormOrder::Inf:
      return m.cwiseAbs().rowwise().sum().maxCoeff();
    case NormOrder::Two:
      break;
  }
  throw std::invalid_argument("induced_norm: only the 1- and inf-norms are induced here");
}

namespace {

void require_symmetric(const Eigen::Ref<const Matrix>& s, double tol) {
  if (s.rows() != s.cols())
    throw std::invalid_argument("sym_eig: matrix is not square");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  const double skew = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (skew > tol * scale)
    throw std::invalid_argument("sym_eig: matrix is not symmetric within tolerance");
}

}  // namespace

SpectralDecomposition sym_eig(const Eigen::Ref<const Matrix>& s,
                              double symmetry_tol) {
  require_symmetric(s, symmetry_tol);
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("sym_eig: eigensolver failed to converge");

  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = sym.rows();
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  return out;
}

double lambda_max_sym(const Eigen::Ref<const Matrix>& s, double symmetry_tol) {
  require_symmetric(s, symmetry_tol);
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("lambda_max_sym: eigensolver failed to converge");
  return solver.eigenvalues().maxCoeff();
}

}  // namespace resilience
