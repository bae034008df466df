#pragma once

#include "resilience/model.hpp"

#include <iosfwd>
#include <optional>

namespace resilience {

/// Whether a reported quantity is an exact minimum-energy expression or
/// relies on the constant-mean energy approximation. Driftless systems are
/// exact; everything else is approximate.
enum class Exactness { Exact, Approximate };

struct EnergyReport {
  SystemKind kind = SystemKind::Driftless;
  int n = 0, m = 0, p = 0;
  double t_f = 0.0;
  double radius = 0.0;
  double v_bar = 0.0;

  // Energies for the loaded task; the malfunctioning entry is evaluated at
  // the worst-case constant uncontrolled input, the worst-case total over the
  // response-gap box vertices (and zero).
  double e_nominal = 0.0;
  double e_malfunctioning = 0.0;
  double e_total = 0.0;
  double e_worst_total = 0.0;
  double r_a_bound = 0.0;

  Exactness tag_nominal = Exactness::Exact;
  Exactness tag_malfunctioning = Exactness::Exact;
  Exactness tag_total = Exactness::Exact;
  Exactness tag_worst_total = Exactness::Exact;
  Exactness tag_r_a_bound = Exactness::Exact;

  // Admissibility of the least-norm constant (mean) controls: displacement
  // alone (zero response gap), over the response-gap box, and over both the
  // gap box and the uncontrolled-input box.
  bool feasible_displacement = false;
  bool feasible_nominal = false;
  bool feasible_malfunctioning = false;

  std::optional<double> worst_sign;  // single lost actuator only
  bool degenerate_sign = false;
};

EnergyReport build_energy_report(const Model& model,
                                 std::optional<double> t_f_override = {});

/// key=value lines, one per field, in a fixed order.
void print_report(const EnergyReport& report, std::ostream& os);

}  // namespace resilience
