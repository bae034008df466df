#include "resilience/simulate.hpp"

#include "resilience/driftless.hpp"

#include <cmath>
#include <cstdio>

namespace resilience::simulate {

namespace {

constexpr double kConvergenceTol = 1e-6;

Trajectory integrate_fixed(const ControlSystem& system, const InputSignal& u,
                           const Vector& x0, double dt, long steps) {
  Trajectory traj;
  traj.dt = dt;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(x0);

  Vector x = x0;
  auto rhs = [&](const Vector& state, double t) -> Vector {
    return system.drift(state) + system.input_map(state) * u(t);
  };
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Vector k1 = rhs(x, t);
    const Vector k2 = rhs(x + 0.5 * dt * k1, t + 0.5 * dt);
    const Vector k3 = rhs(x + 0.5 * dt * k2, t + 0.5 * dt);
    const Vector k4 = rhs(x + dt * k3, t + dt);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite()) {
      char msg[128];
      std::snprintf(msg, sizeof msg, "integration blew up at t = %.6g (step %ld)",
                    t + dt, k + 1);
      throw std::runtime_error(msg);
    }
    traj.times.push_back(static_cast<double>(k + 1) * dt);
    traj.states.push_back(x);
  }
  return traj;
}

}  // namespace

Trajectory integrate(const ControlSystem& system, const InputSignal& u,
                     const Vector& x0, double t_f, double dt, bool check_convergence) {
  if (!(t_f > 0.0)) throw std::invalid_argument("integrate: t_f must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
  if (x0.size() != system.n) throw std::invalid_argument("integrate: x0 has wrong dimension");
  if (u.channels() != system.m + system.p)
    throw std::invalid_argument("integrate: signal channel count must equal m + p");

  const double ratio = t_f / dt;
  const long steps = std::lround(ratio);
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio)
    throw std::invalid_argument("integrate: t_f / dt must be an integer");

  Trajectory traj = integrate_fixed(system, u, x0, dt, steps);
  if (check_convergence) {
    const Trajectory half = integrate_fixed(system, u, x0, dt / 2.0, 2 * steps);
    const double diff =
        (traj.states.back() - half.states.back()).lpNorm<Eigen::Infinity>();
    if (diff > kConvergenceTol) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "integrate: step-doubling check failed (terminal change %.3g)", diff);
      throw std::runtime_error(msg);
    }
  }
  return traj;
}

std::vector<InputSignal> signal_sweep(const SweepSpec& spec) {
  if (spec.channels < 1) throw std::invalid_argument("signal_sweep: channels must be positive");
  if (spec.sinusoid_freqs.empty() && spec.constant_levels.empty() &&
      spec.decay_rates.empty() && !spec.include_worst_case)
    throw std::invalid_argument("signal_sweep: empty specification");

  const int c = spec.channels;
  std::vector<InputSignal> out;
  char label[64];

  for (double w : spec.sinusoid_freqs) {
    std::snprintf(label, sizeof label, "sin_w%g", w);
    out.push_back(InputSignal::sinusoid(Vector::Constant(c, spec.sinusoid_amplitude),
                                        Vector::Constant(c, w), Vector::Zero(c), label));
  }
  for (double level : spec.constant_levels) {
    std::snprintf(label, sizeof label, "const_%s%g", level < 0.0 ? "m" : "p",
                  std::abs(level));
    out.push_back(InputSignal::constant(Vector::Constant(c, level), label));
  }
  for (double rate : spec.decay_rates) {
    std::snprintf(label, sizeof label, "exp_k%g", rate);
    out.push_back(
        InputSignal::exponential_decay(Vector::Constant(c, spec.decay_amplitude), rate, label));
  }
  if (spec.include_worst_case) {
    Vector signs = spec.worst_case_signs.size() == 0 ? Vector::Constant(c, 1.0)
                                                     : spec.worst_case_signs;
    if (signs.size() != c)
      throw std::invalid_argument("signal_sweep: worst-case sign vector has wrong size");
    out.push_back(InputSignal::sign_constant(std::move(signs), "worst_sign"));
  }
  return out;
}

double brute_force_constant_min(const Matrix& B, const Vector& x_tilde, double t_f,
                                double grid_step) {
  if (!(t_f > 0.0)) throw std::invalid_argument("t_f must be positive");
  if (!(grid_step > 0.0 && grid_step <= 1.0))
    throw std::invalid_argument("grid_step must lie in (0, 1]");
  const int dims = static_cast<int>(B.cols());
  if (dims > 3) throw std::invalid_argument("brute force grid is limited to three inputs");

  // Grid from -1 with the given step, capped so every point stays admissible.
  const long per_axis = static_cast<long>(std::floor((2.0 + 1e-12) / grid_step)) + 1;
  const double tol = t_f * grid_step * induced_norm(B, NormOrder::Inf);

  std::vector<Vector> scaled_cols(dims);
  for (int d = 0; d < dims; ++d) scaled_cols[d] = t_f * B.col(d);

  double best = std::numeric_limits<double>::infinity();
  std::vector<long> idx(dims, 0);
  Vector u(dims);
  while (true) {
    Vector residual = x_tilde;
    double energy = 0.0;
    for (int d = 0; d < dims; ++d) {
      u(d) = -1.0 + grid_step * static_cast<double>(idx[d]);
      residual += u(d) * scaled_cols[d];
      energy += u(d) * u(d);
    }
    if (residual.lpNorm<Eigen::Infinity>() <= tol) best = std::min(best, t_f * energy);

    int d = 0;
    while (d < dims && ++idx[d] == per_axis) idx[d++] = 0;
    if (d == dims) break;
  }
  if (!std::isfinite(best))
    throw std::runtime_error("target unreachable at this grid resolution");
  return best;
}

double brute_force_optimal_time(const Matrix& B_c, const Matrix& B_uc,
                                const Vector& x_tilde, const Vector& u_uc_mean) {
  auto objective = [&](double t) {
    return driftless::malfunctioning_energy(B_c, B_uc, x_tilde, t, u_uc_mean);
  };

  double a = 1e-3, b = 1e3;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  while (b - a > 1e-8 * std::max(0.5 * (a + b), 1e-3)) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
    }
  }
  const double t_star = 0.5 * (a + b);

  // A flat objective cannot be bracketed; flag it instead of returning an
  // arbitrary interior point.
  const double f_star = objective(t_star);
  const double spread = std::abs(objective(1e-3) - f_star) + std::abs(objective(1e3) - f_star);
  if (spread <= 1e-12 * std::max(1.0, std::abs(f_star)))
    throw std::runtime_error("brute_force_optimal_time: objective is flat over the bracket");
  return t_star;
}

}  // namespace resilience::simulate
