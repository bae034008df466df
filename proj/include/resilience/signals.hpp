#pragma once

#include "resilience/numerics.hpp"

#include <string>
#include <variant>
#include <vector>

namespace resilience {

// Admissible input shapes. Every channel must stay within [-1, 1] over the
// whole horizon; this is checked analytically at construction.

struct ConstantSignal {
  Vector value;
};

// Per-channel u_i(t) = amplitude_i * sin(omega_i * t + phase_i).
struct SinusoidSignal {
  Vector amplitude;
  Vector omega;
  Vector phase;
};

// u(t) = amplitude * exp(-rate * t), rate >= 0.
struct DecaySignal {
  Vector amplitude;
  double rate;
};

// Constant with entries in {-1, +1}.
struct SignSignal {
  Vector signs;
};

// Piecewise constant: values[k] holds on [breakpoints[k], breakpoints[k+1]);
// the last value extends to the end of the horizon.
struct PiecewiseSignal {
  std::vector<double> breakpoints;  // ascending, breakpoints[0] == 0
  std::vector<Vector> values;       // one per interval, size breakpoints.size()-1 or equal
};

class InputSignal {
 public:
  using Shape =
      std::variant<ConstantSignal, SinusoidSignal, DecaySignal, SignSignal, PiecewiseSignal>;

  /// Throws std::invalid_argument if the shape can exceed unit sup-norm or is
  /// structurally malformed (mismatched sizes, unsorted breakpoints, ...).
  InputSignal(Shape shape, std::string label);

  int channels() const { return channels_; }
  const std::string& label() const { return label_; }
  const Shape& shape() const { return shape_; }

  /// True for shapes that are constant in time (Constant, Sign).
  bool is_constant() const;

  Vector operator()(double t) const;

  static InputSignal constant(Vector value, std::string label = "const");
  static InputSignal sinusoid(Vector amplitude, Vector omega, Vector phase,
                              std::string label = "sin");
  static InputSignal exponential_decay(Vector amplitude, double rate,
                                       std::string label = "exp");
  static InputSignal sign_constant(Vector signs, std::string label = "sign");
  static InputSignal piecewise_constant(std::vector<double> breakpoints,
                                        std::vector<Vector> values,
                                        std::string label = "pwc");

 private:
  Shape shape_;
  std::string label_;
  int channels_ = 0;
};

/// Mean value (1/t_f) * integral of u over [0, t_f]; closed form per shape.
Vector signal_mean(const InputSignal& u, double t_f);

/// Energy: integral of |u(t)|_2^2 over [0, t_f]; closed form per shape.
double signal_energy(const InputSignal& u, double t_f);

/// Grid check of the admissibility constraint sup_t |u(t)|_inf <= 1 + tol.
bool is_admissible(const InputSignal& u, double t_f, int grid_points = 10000,
                   double tol = 1e-12);

}  // namespace resilience
