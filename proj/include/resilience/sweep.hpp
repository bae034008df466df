#pragma once

#include "resilience/model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace resilience {

struct SweepOptions {
  double r_min = 0.0;
  double r_max = 0.0;
  int points = 0;
  double t_f = 0.0;
};

struct SweepRow {
  double radius = 0.0;
  double e_nominal = 0.0;
  double e_worst_total = 0.0;
  double gap = 0.0;  // e_worst_total - e_nominal
  double r_a_bound = 0.0;
  bool feasible = false;
  std::vector<double> signal_totals;  // aligned with SweepResult::signal_labels
};

struct SweepResult {
  std::vector<std::string> signal_labels;
  std::vector<SweepRow> rows;
};

/// Deterministic unit directions used to scan the sphere |x_tilde|_2 = R:
/// +-1 for one state, a 1-degree circle grid for two, a 6-degree
/// latitude/longitude grid for three, and a seeded sample otherwise.
std::vector<Vector> direction_grid(int n);

/// One row per log-spaced radius. Every row maximizes the worst-case-total /
/// nominal gap over the direction grid and the response-gap box vertices,
/// then evaluates the uncontrolled-signal family at that maximizer.
SweepResult run_sweep(const Model& model, const SweepOptions& options);

/// Header row plus one line per radius; 17 significant digits.
void write_csv(const SweepResult& result, std::ostream& os);

}  // namespace resilience
