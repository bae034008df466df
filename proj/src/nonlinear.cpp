#include "resilience/nonlinear.hpp"

#include "resilience/simulate.hpp"

#include <cmath>

namespace resilience::nonlinear {

namespace {

constexpr double kAdmissibleTol = 1e-12;
constexpr double kDegenerateRate = 1e-10;

void require_positive_time(double t_f) {
  if (!(t_f > 0.0)) throw std::invalid_argument("t_f must be positive");
}

void require_admissible_mean(const Vector& u_uc_mean) {
  if (u_uc_mean.lpNorm<Eigen::Infinity>() > 1.0 + kAdmissibleTol)
    throw std::invalid_argument("uncontrolled mean exceeds the unit bound");
}

void require_one_actuator(const Matrix& B_uc) {
  if (B_uc.cols() != 1)
    throw std::invalid_argument("closed form requires exactly one uncontrolled actuator");
}

}  // namespace

ResponseGapBound response_gap_bound(double d_f, double d_g, double f0_inf_norm,
                                    double b_inf_norm, double t_f) {
  if (d_f < 0.0 || d_g < 0.0 || f0_inf_norm < 0.0 || b_inf_norm < 0.0)
    throw std::invalid_argument("response_gap_bound: negative input");
  require_positive_time(t_f);

  ResponseGapBound out;
  out.d_s = d_f + d_g;
  out.c = f0_inf_norm + b_inf_norm;
  out.t_f = t_f;
  if (out.d_s < kDegenerateRate) {
    out.v_bar = t_f * f0_inf_norm;  // series limit of the expression below
  } else {
    out.v_bar = (out.c * std::expm1(t_f * out.d_s) - t_f * out.d_s * b_inf_norm) / out.d_s;
  }
  return out;
}

Vector response_gap(const ControlSystem& system, const ActuatorPartition& part,
                    const InputSignal& u, double t_f, double dt) {
  require_positive_time(t_f);
  if (u.channels() != system.m + system.p)
    throw std::invalid_argument("response_gap: signal channel count must equal m + p");
  if (dt <= 0.0) dt = t_f / 1000.0;
  const auto traj = simulate::integrate(system, u, part.x0, t_f, dt);
  return t_f * part.B * signal_mean(u, t_f) - (traj.terminal_state() - part.x0);
}

MeanControl mean_control_nominal(const Matrix& B, const Vector& x_tilde, double t_f,
                                 const Vector& v) {
  require_positive_time(t_f);
  MeanControl out;
  out.v_used = v;
  out.value = pinv(B) * (v - x_tilde) / t_f;
  out.feasible = out.value.lpNorm<Eigen::Infinity>() <= 1.0 + kAdmissibleTol;
  return out;
}

bool feasible_nominal(const Matrix& B, const Vector& x_tilde, double t_f, double v_bar) {
  require_positive_time(t_f);
  if (!(v_bar >= 0.0)) throw std::invalid_argument("v_bar must be non-negative");
  const Matrix B_pinv = pinv(B);
  const Vector base = B_pinv * x_tilde;
  for (Eigen::Index i = 0; i < B_pinv.rows(); ++i) {
    const double worst = std::abs(base(i)) + v_bar * B_pinv.row(i).lpNorm<1>();
    if (worst > t_f) return false;
  }
  return true;
}

MeanControl mean_control_malfunctioning(const Matrix& B_c, const Matrix& B_uc,
                                        const Vector& x_tilde, double t_f,
                                        const Vector& v, const Vector& u_uc_mean) {
  require_positive_time(t_f);
  require_admissible_mean(u_uc_mean);
  MeanControl out;
  out.v_used = v;
  out.value = pinv(B_c) * (v - x_tilde - t_f * B_uc * u_uc_mean) / t_f;
  out.feasible = out.value.lpNorm<Eigen::Infinity>() <= 1.0 + kAdmissibleTol;
  return out;
}

bool feasible_malfunctioning(const Matrix& B_c, const Matrix& B_uc,
                             const Vector& x_tilde, double t_f, double v_bar) {
  require_positive_time(t_f);
  if (!(v_bar >= 0.0)) throw std::invalid_argument("v_bar must be non-negative");
  const Matrix B_c_pinv = pinv(B_c);
  const Vector base = B_c_pinv * x_tilde;
  const Matrix mix = B_c_pinv * B_uc;
  for (Eigen::Index j = 0; j < B_c_pinv.rows(); ++j) {
    const double worst = std::abs(base(j)) + v_bar * B_c_pinv.row(j).lpNorm<1>() +
                         t_f * mix.row(j).lpNorm<1>();
    if (worst > t_f) return false;
  }
  return true;
}

double nominal_energy(const Matrix& B, const Vector& x_tilde, double t_f,
                      const Vector& v) {
  require_positive_time(t_f);
  return (pinv(B) * (v - x_tilde)).squaredNorm() / t_f;
}

double malfunctioning_energy(const Matrix& B_c, const Matrix& B_uc,
                             const Vector& x_tilde, double t_f, const Vector& v,
                             const Vector& u_uc_mean) {
  require_positive_time(t_f);
  require_admissible_mean(u_uc_mean);
  return (pinv(B_c) * (v - x_tilde - t_f * B_uc * u_uc_mean)).squaredNorm() / t_f;
}

double worst_case_total_bound(const Matrix& B_c, const Matrix& B_uc,
                              const Vector& x_tilde, double t_f, const Vector& v) {
  require_positive_time(t_f);
  const Matrix B_c_pinv = pinv(B_c);
  const int p = static_cast<int>(B_uc.cols());

  const SpectralDecomposition spec = sym_eig(B_uc.transpose() * B_uc);
  const double v_one = induced_norm(spec.eigenvectors, NormOrder::One);
  const double lambda_sum = spec.eigenvalues.sum();

  const Vector y = v - x_tilde;
  const Vector coupling = B_uc.transpose() * (B_c_pinv.transpose() * (B_c_pinv * y));
  return (B_c_pinv * y).squaredNorm() / t_f + t_f * (lambda_sum * v_one * v_one + p) +
         2.0 * coupling.lpNorm<1>();
}

WorstCaseTotal worst_case_total_one_actuator(const Matrix& B_c, const Matrix& B_uc,
                                             const Vector& x_tilde, double t_f,
                                             const Vector& v) {
  require_positive_time(t_f);
  require_one_actuator(B_uc);
  const Matrix B_c_pinv = pinv(B_c);
  const Vector y = v - x_tilde;
  const double coupling =
      (B_uc.transpose() * (B_c_pinv.transpose() * (B_c_pinv * y)))(0);

  WorstCaseTotal out;
  out.value = (B_c_pinv * y).squaredNorm() / t_f + t_f * (B_uc.squaredNorm() + 1.0) +
              2.0 * std::abs(coupling);
  // The maximizing constant input follows the coupling at x_tilde - v, so the
  // driftless result is recovered at v = 0.
  const double aligned = -coupling;
  out.sign = aligned > 0.0 ? 1.0 : (aligned < 0.0 ? -1.0 : 0.0);
  out.degenerate = aligned == 0.0;
  return out;
}

Vector worst_uncontrolled_signs(const Matrix& B_c, const Matrix& B_uc,
                                const Vector& x_tilde, const Vector& v) {
  const Matrix B_c_pinv = pinv(B_c);
  const Vector coupling =
      B_uc.transpose() * (B_c_pinv.transpose() * (B_c_pinv * (x_tilde - v)));
  Vector signs(coupling.size());
  for (Eigen::Index i = 0; i < coupling.size(); ++i)
    signs(i) = coupling(i) < 0.0 ? -1.0 : 1.0;
  return signs;
}

double resilience_bound(const Matrix& B, const Matrix& B_c, const Matrix& B_uc,
                        double t_f, double radius, double v_bar) {
  require_positive_time(t_f);
  if (!(radius >= 0.0) || !(v_bar >= 0.0))
    throw std::invalid_argument("radius and v_bar must be non-negative");

  const int n = static_cast<int>(B.rows());
  const int p = static_cast<int>(B_uc.cols());
  const Matrix B_pinv = pinv(B);
  const Matrix B_c_pinv = pinv(B_c);

  const SpectralDecomposition spec = sym_eig(B_uc.transpose() * B_uc);
  const double v_one = induced_norm(spec.eigenvectors, NormOrder::One);
  const double lambda_sum = spec.eigenvalues.sum();

  const Matrix gap = B_c_pinv.transpose() * B_c_pinv - B_pinv.transpose() * B_pinv;
  const double lambda = lambda_max_sym(gap);

  // Largest singular value of the p x n coupling matrix; for p = 1 this is
  // the vector 2-norm.
  const Matrix coupling = B_uc.transpose() * (B_c_pinv.transpose() * B_c_pinv);
  const double coupling_norm = coupling.jacobiSvd().singularValues()(0);

  const double reach = radius + v_bar * std::sqrt(static_cast<double>(n));
  return t_f * (lambda_sum * v_one * v_one + p) + reach * reach / t_f * lambda +
         2.0 * n * reach * coupling_norm;
}

double resilience_bound_one_actuator(const Matrix& B, const Matrix& B_c,
                                     const Matrix& B_uc, double t_f, double radius,
                                     double v_bar) {
  require_positive_time(t_f);
  require_one_actuator(B_uc);
  if (!(radius >= 0.0) || !(v_bar >= 0.0))
    throw std::invalid_argument("radius and v_bar must be non-negative");

  const int n = static_cast<int>(B.rows());
  const Matrix B_pinv = pinv(B);
  const Matrix B_c_pinv = pinv(B_c);
  const Matrix gap = B_c_pinv.transpose() * B_c_pinv - B_pinv.transpose() * B_pinv;
  const double lambda = lambda_max_sym(gap);
  const double coupling_norm =
      (B_uc.transpose() * (B_c_pinv.transpose() * B_c_pinv)).norm();

  const double reach = radius + v_bar * std::sqrt(static_cast<double>(n));
  return reach * reach / t_f * lambda + 2.0 * reach * coupling_norm +
         t_f * (B_uc.squaredNorm() + 1.0);
}

}  // namespace resilience::nonlinear
