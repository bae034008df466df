#pragma once

#include "resilience/model.hpp"
#include "resilience/numerics.hpp"

#include <optional>

namespace resilience::driftless {

// Exact minimum-energy quantities for linear driftless dynamics xdot = B u.
// All displacements are expressed as x_tilde = x0 - x_tg.

/// The least-norm constant control meeting the task stays admissible iff
/// t_f >= |B^+ x_tilde|_inf.
bool feasible(const Matrix& B, const Vector& x_tilde, double t_f);

/// Minimum full-input energy: |B^+ x_tilde|_2^2 / t_f, attained by the
/// constant control -B^+ x_tilde / t_f.
double nominal_energy(const Matrix& B, const Vector& x_tilde, double t_f);

/// Minimum controlled-input energy against a constant uncontrolled input with
/// mean u_uc_mean: |B_c^+ (x_tilde + t_f B_uc u_uc_mean)|_2^2 / t_f.
/// Rejects |u_uc_mean|_inf > 1.
double malfunctioning_energy(const Matrix& B_c, const Matrix& B_uc,
                             const Vector& x_tilde, double t_f,
                             const Vector& u_uc_mean);

/// Upper bound on the worst-case total energy over all admissible
/// uncontrolled inputs (any number of lost actuators).
double worst_case_total_bound(const Matrix& B_c, const Matrix& B_uc,
                              const Vector& x_tilde, double t_f);

/// Worst-case total energy result for a single lost actuator. sign is the
/// maximizing constant uncontrolled input (+1/-1); it is 0 with degenerate set
/// when the coupling term vanishes, in which case +1 is the conventional
/// choice for energy evaluation.
struct WorstCaseTotal {
  double value = 0.0;
  double sign = 0.0;
  bool degenerate = false;
};

/// Closed-form worst-case total energy when exactly one actuator is lost.
WorstCaseTotal worst_case_total_one_actuator(const Matrix& B_c, const Matrix& B_uc,
                                             const Vector& x_tilde, double t_f);

/// Final time minimizing the malfunctioning energy for a given constant
/// uncontrolled input: |B_c^+ x_tilde|_2 / |B_c^+ B_uc u_uc_mean|_2.
/// Throws when the uncontrolled drift is invisible through the controlled
/// pseudoinverse (zero denominator) or x_tilde = 0.
double optimal_final_time(const Matrix& B_c, const Matrix& B_uc,
                          const Vector& x_tilde, const Vector& u_uc_mean);

/// Upper bound on the additive energetic resilience metric over all initial
/// conditions within |x_tilde|_2 <= radius, for a single lost actuator.
double resilience_bound(const Matrix& B, const Matrix& B_c, const Matrix& B_uc,
                        double t_f, double radius);

/// Aggregate of the energies above for one task instance.
struct Energies {
  double nominal = 0.0;
  double malfunctioning = 0.0;
  double worst_total_bound = 0.0;
  std::optional<WorstCaseTotal> worst_total_one_actuator;  // present when p == 1
  bool feasible = false;  // admissibility of the least-norm nominal control
};

Energies energies(const ActuatorPartition& part, const ReachTask& task,
                  const Vector& u_uc_mean);

}  // namespace resilience::driftless
