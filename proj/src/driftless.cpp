#include "resilience/driftless.hpp"

#include <cmath>

namespace resilience::driftless {

namespace {

constexpr double kAdmissibleTol = 1e-12;

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

bool feasible(const Matrix& B, const Vector& x_tilde, double t_f) {
  require_positive_time(t_f);
  return t_f >= (pinv(B) * x_tilde).lpNorm<Eigen::Infinity>();
}

double nominal_energy(const Matrix& B, const Vector& x_tilde, double t_f) {
  require_positive_time(t_f);
  return (pinv(B) * x_tilde).squaredNorm() / t_f;
}

double malfunctioning_energy(const Matrix& B_c, const Matrix& B_uc,
                             const Vector& x_tilde, double t_f,
                             const Vector& u_uc_mean) {
  require_positive_time(t_f);
  require_admissible_mean(u_uc_mean);
  return (pinv(B_c) * (x_tilde + t_f * B_uc * u_uc_mean)).squaredNorm() / t_f;
}

double worst_case_total_bound(const Matrix& B_c, const Matrix& B_uc,
                              const Vector& x_tilde, double t_f) {
  require_positive_time(t_f);
  const Matrix B_c_pinv = pinv(B_c);
  const int p = static_cast<int>(B_uc.cols());

  const SpectralDecomposition spec = sym_eig(B_uc.transpose() * B_uc);
  const double v_one = induced_norm(spec.eigenvectors, NormOrder::One);
  const double lambda_sum = spec.eigenvalues.sum();

  const Vector coupling = B_uc.transpose() * (B_c_pinv.transpose() * (B_c_pinv * x_tilde));
  return (B_c_pinv * x_tilde).squaredNorm() / t_f +
         t_f * (lambda_sum * v_one * v_one + p) + 2.0 * coupling.lpNorm<1>();
}

WorstCaseTotal worst_case_total_one_actuator(const Matrix& B_c, const Matrix& B_uc,
                                             const Vector& x_tilde, double t_f) {
  require_positive_time(t_f);
  require_one_actuator(B_uc);
  const Matrix B_c_pinv = pinv(B_c);
  const double coupling =
      (B_uc.transpose() * (B_c_pinv.transpose() * (B_c_pinv * x_tilde)))(0);

  WorstCaseTotal out;
  out.value = (B_c_pinv * x_tilde).squaredNorm() / t_f +
              t_f * (B_uc.squaredNorm() + 1.0) + 2.0 * std::abs(coupling);
  out.sign = coupling > 0.0 ? 1.0 : (coupling < 0.0 ? -1.0 : 0.0);
  out.degenerate = coupling == 0.0;
  return out;
}

double optimal_final_time(const Matrix& B_c, const Matrix& B_uc,
                          const Vector& x_tilde, const Vector& u_uc_mean) {
  require_admissible_mean(u_uc_mean);
  if (x_tilde.norm() == 0.0)
    throw std::invalid_argument("optimal_final_time: zero displacement");
  const Matrix B_c_pinv = pinv(B_c);
  const double denom = (B_c_pinv * (B_uc * u_uc_mean)).norm();
  if (denom == 0.0)
    throw std::domain_error(
        "optimal_final_time: uncontrolled drift is invisible through the controlled pseudoinverse");
  return (B_c_pinv * x_tilde).norm() / denom;
}

double resilience_bound(const Matrix& B, const Matrix& B_c, const Matrix& B_uc,
                        double t_f, double radius) {
  require_positive_time(t_f);
  require_one_actuator(B_uc);
  if (!(radius >= 0.0)) throw std::invalid_argument("radius must be non-negative");

  const Matrix B_pinv = pinv(B);
  const Matrix B_c_pinv = pinv(B_c);
  const Matrix gap = B_c_pinv.transpose() * B_c_pinv - B_pinv.transpose() * B_pinv;
  const double lambda = lambda_max_sym(gap);
  const double coupling_norm =
      (B_uc.transpose() * (B_c_pinv.transpose() * B_c_pinv)).norm();

  return radius * radius / t_f * lambda + 2.0 * radius * coupling_norm +
         t_f * (B_uc.squaredNorm() + 1.0);
}

Energies energies(const ActuatorPartition& part, const ReachTask& task,
                  const Vector& u_uc_mean) {
  Energies out;
  out.feasible = feasible(part.B, task.x_tilde, task.t_f);
  out.nominal = nominal_energy(part.B, task.x_tilde, task.t_f);
  out.malfunctioning =
      malfunctioning_energy(part.B_c, part.B_uc, task.x_tilde, task.t_f, u_uc_mean);
  out.worst_total_bound =
      worst_case_total_bound(part.B_c, part.B_uc, task.x_tilde, task.t_f);
  if (part.B_uc.cols() == 1)
    out.worst_total_one_actuator =
        worst_case_total_one_actuator(part.B_c, part.B_uc, task.x_tilde, task.t_f);
  return out;
}

}  // namespace resilience::driftless
