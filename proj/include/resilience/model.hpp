#pragma once

#include "resilience/numerics.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace resilience {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model file (bad JSON, unknown fields, wrong shapes).
class ParseError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Structurally valid file violating a model invariant (rank, Lipschitz, ...).
class ValidationError : public ModelError {
 public:
  using ModelError::ModelError;
};

enum class SystemKind { Driftless, LinearDrift, GeneralNonlinear };

/// Builtin state-dependent disturbance families selectable from model files.
/// "admire_wind" on a 3-state system x = (p, q, r):
///   (amplitude/2) * [sin(p) cos^2(p), -sin(2 q), 1]
struct WindField {
  std::string family;
  double amplitude = 0.0;

  Vector operator()(const Vector& x) const;
};

struct ControlSystem {
  SystemKind kind = SystemKind::Driftless;
  int n = 0;  // states
  int m = 0;  // controlled inputs
  int p = 0;  // uncontrolled inputs
  double d_f = 0.0;  // declared Lipschitz constant of the drift (inf-norm)
  double d_g = 0.0;  // declared Lipschitz constant of the input map (inf-norm)
  Matrix A;          // linear drift part; n x n, zero for driftless systems
  Matrix B0;         // constant input map; n x (m + p)
  std::optional<WindField> wind;

  Vector drift(const Vector& x) const;
  Matrix input_map(const Vector& /*x*/) const { return B0; }
};

struct ActuatorPartition {
  Vector x0;                       // linearization point the split is anchored at
  Matrix B;                        // g(x0), n x (m + p)
  std::vector<int> uncontrolled;   // 0-based column indices into B, size p
  Matrix B_c;                      // controlled columns, n x m
  Matrix B_uc;                     // uncontrolled columns, n x p
  Vector f0;                       // f(x0)
};

struct ReachTask {
  Vector x0;
  Vector x_tg;
  Vector x_tilde;  // x0 - x_tg
  double t_f = 0.0;
  std::optional<double> radius;  // bound on |x_tilde|_2 when supplied
};

struct Model {
  ControlSystem system;
  ActuatorPartition partition;
  ReachTask task;
};

/// Assembles and validates a model: dimension checks, full row rank of B and
/// B_c (pseudoinverse residual within 1e-8), declared Lipschitz constants
/// spot-checked by sampling state pairs in a box around x0, task invariants.
Model make_model(ControlSystem system, std::vector<int> uncontrolled, Vector x0,
                 Vector x_tg, double t_f, std::optional<double> radius);

/// Loads a model definition file (JSON; see README for the schema).
/// Unknown fields are rejected. Throws ParseError / ValidationError.
Model load_model(const std::string& path);

/// Same schema, parsing from an in-memory string.
Model parse_model(const std::string& json_text);

// Bundled systems used by the simulation studies and the validation suite.
Model underwater_robot_model();
Model admire_model();
Model admire_wind_model(double amplitude = 1.0);

}  // namespace resilience
