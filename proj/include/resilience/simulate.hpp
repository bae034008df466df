#pragma once

#include "resilience/model.hpp"
#include "resilience/signals.hpp"

#include <vector>

namespace resilience::simulate {

struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;   // uniform grid from 0 to t_f
  std::vector<Vector> states;  // one state per grid point

  const Vector& terminal_state() const { return states.back(); }
};

/// Classical fixed-step 4th-order Runge-Kutta integration of
/// xdot = f(x) + g(x) u(t). Requires t_f / dt to be an integer within 1e-9.
/// When check_convergence is set, the run is repeated at dt/2 and the
/// terminal states must agree within 1e-6 in the inf-norm.
/// Throws on non-finite states (blow-up) with the failing time in the message.
Trajectory integrate(const ControlSystem& system, const InputSignal& u,
                     const Vector& x0, double t_f, double dt,
                     bool check_convergence = true);

/// Family of uncontrolled-input test signals swept in the simulation studies.
struct SweepSpec {
  int channels = 1;
  double sinusoid_amplitude = 1.0;
  std::vector<double> sinusoid_freqs{1.0, 5.0, 20.0};   // rad/s
  std::vector<double> constant_levels{0.5, -0.5, 1.0, -1.0};
  double decay_amplitude = 1.0;
  std::vector<double> decay_rates{1.0, 5.0};
  bool include_worst_case = true;
  Vector worst_case_signs;  // defaults to all +1 when empty
};

/// Deterministic ordered signal list (10 signals for the default spec).
/// Rejects amplitudes above 1 and fully empty specs.
std::vector<InputSignal> signal_sweep(const SweepSpec& spec);

/// Grid minimum of t_f |u|_2^2 over constant controls u in [-1, 1]^(m+p)
/// whose driftless terminal state lands within t_f * grid_step * |B|_inf of
/// the target (inf-norm). Restricted to m + p <= 3.
/// Throws when no grid point reaches the target at this resolution.
double brute_force_constant_min(const Matrix& B, const Vector& x_tilde, double t_f,
                                double grid_step);

/// Golden-section minimizer of the malfunctioning energy over the final time
/// in [1e-3, 1e3], tolerance 1e-6. Throws on a flat objective.
double brute_force_optimal_time(const Matrix& B_c, const Matrix& B_uc,
                                const Vector& x_tilde, const Vector& u_uc_mean);

}  // namespace resilience::simulate
