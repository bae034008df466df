#pragma once

#include "resilience/driftless.hpp"
#include "resilience/model.hpp"
#include "resilience/signals.hpp"

namespace resilience::nonlinear {

using driftless::WorstCaseTotal;

// Approximate energy machinery for Lipschitz nonlinear dynamics. The state
// response differs from the driftless surrogate x0 + t B u_mean by a
// trajectory-dependent gap v; everything below either bounds that gap or
// takes a candidate v (with |v|_inf <= v_bar) as an explicit argument.

/// Gronwall-derived bound on the response gap.
struct ResponseGapBound {
  double v_bar = 0.0;  // sup-norm bound on the gap
  double c = 0.0;      // |f0|_inf + |B|_inf
  double d_s = 0.0;    // D_f + D_g
  double t_f = 0.0;
};

/// v_bar = [c (e^{t_f D_s} - 1) - t_f D_s |B|_inf] / D_s with the analytic
/// limit t_f |f0|_inf used below D_s = 1e-10.
ResponseGapBound response_gap_bound(double d_f, double d_g, double f0_inf_norm,
                                    double b_inf_norm, double t_f);

/// Response gap measured on a simulated trajectory:
/// v = t_f B mean(u) - (x(t_f) - x0). dt <= 0 selects t_f / 1000.
Vector response_gap(const ControlSystem& system, const ActuatorPartition& part,
                    const InputSignal& u, double t_f, double dt = 0.0);

/// Least-norm mean control and whether it stays within the unit box.
struct MeanControl {
  Vector value;
  Vector v_used;
  bool feasible = false;
};

/// Least-norm mean of the full input meeting the task for a given gap v:
/// B^+ (v - x_tilde) / t_f.
MeanControl mean_control_nominal(const Matrix& B, const Vector& x_tilde, double t_f,
                                 const Vector& v);

/// True iff the nominal least-norm mean stays admissible for every gap with
/// |v|_inf <= v_bar; closed-form maximum of the linear objective over the box.
bool feasible_nominal(const Matrix& B, const Vector& x_tilde, double t_f, double v_bar);

/// Least-norm mean of the controlled input against an uncontrolled mean:
/// B_c^+ (v - x_tilde - t_f B_uc u_uc_mean) / t_f.
MeanControl mean_control_malfunctioning(const Matrix& B_c, const Matrix& B_uc,
                                        const Vector& x_tilde, double t_f,
                                        const Vector& v, const Vector& u_uc_mean);

/// Closed-form double-box check over |v|_inf <= v_bar and |u_uc|_inf <= 1.
bool feasible_malfunctioning(const Matrix& B_c, const Matrix& B_uc,
                             const Vector& x_tilde, double t_f, double v_bar);

/// Approximate nominal energy |B^+ (v - x_tilde)|_2^2 / t_f.
double nominal_energy(const Matrix& B, const Vector& x_tilde, double t_f,
                      const Vector& v);

/// Approximate malfunctioning energy
/// |B_c^+ (v - x_tilde - t_f B_uc u_uc_mean)|_2^2 / t_f.
double malfunctioning_energy(const Matrix& B_c, const Matrix& B_uc,
                             const Vector& x_tilde, double t_f, const Vector& v,
                             const Vector& u_uc_mean);

/// Upper bound on the worst-case total energy (any number of lost actuators).
double worst_case_total_bound(const Matrix& B_c, const Matrix& B_uc,
                              const Vector& x_tilde, double t_f, const Vector& v);

/// Worst-case total energy for one lost actuator at a given gap v.
WorstCaseTotal worst_case_total_one_actuator(const Matrix& B_c, const Matrix& B_uc,
                                             const Vector& x_tilde, double t_f,
                                             const Vector& v);

/// Maximizing constant uncontrolled input (entrywise signs of the coupling
/// term at x_tilde - v; zeros resolve to +1).
Vector worst_uncontrolled_signs(const Matrix& B_c, const Matrix& B_uc,
                                const Vector& x_tilde, const Vector& v);

/// Resilience metric bound for any number of lost actuators over
/// |x_tilde|_2 <= radius, |v|_inf <= v_bar.
double resilience_bound(const Matrix& B, const Matrix& B_c, const Matrix& B_uc,
                        double t_f, double radius, double v_bar);

/// Sharper resilience metric bound for one lost actuator.
double resilience_bound_one_actuator(const Matrix& B, const Matrix& B_c,
                                     const Matrix& B_uc, double t_f, double radius,
                                     double v_bar);

}  // namespace resilience::nonlinear
