#pragma once

#include "resilience/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace resilience::validate {

enum class Level { Quick, Full };

struct SuiteResult {
  std::string name;
  int checks = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Penrose identities of the pseudoinverse on random (partly rank-deficient)
/// matrices up to 8x8, plus the full-row-rank right-inverse property.
SuiteResult penrose(uint64_t seed, Level level);

/// signal_energy >= t_f |signal_mean|_2^2 for random admissible signals, with
/// equality exactly for the constant shapes.
SuiteResult jensen(uint64_t seed, Level level);

/// |response gap| <= gap bound on the bundled systems across the signal
/// family and several final times.
SuiteResult gronwall(Level level, std::optional<double> dt_override = {});

/// Same check on caller-supplied models (used to show that an understated
/// Lipschitz constant is caught).
SuiteResult gronwall_for(const std::vector<Model>& models, Level level,
                         std::optional<double> dt_override = {});

/// Total-minus-nominal energy never exceeds the resilience bound on sampled
/// instances (single lost actuator, controlled pseudoinverse non-expanding).
SuiteResult dominance(uint64_t seed, Level level);

/// With zero Lipschitz constants and zero response gap, every approximate
/// expression coincides with its exact driftless counterpart.
SuiteResult reduction(uint64_t seed, Level level);

/// For scalar driftless systems with a unit controlled column, the enumerated
/// supremum of total-minus-nominal energy meets the resilience bound exactly.
SuiteResult achievability(uint64_t seed, Level level);

std::vector<SuiteResult> run_all(uint64_t seed, Level level,
                                 std::optional<double> dt_override = {});

}  // namespace resilience::validate
