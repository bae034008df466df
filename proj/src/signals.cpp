#include "resilience/signals.hpp"

#include <cmath>

namespace resilience {

namespace {

constexpr double kAmplitudeTol = 1e-12;

void check_unit(double amplitude, const char* what) {
  if (!std::isfinite(amplitude) || std::abs(amplitude) > 1.0 + kAmplitudeTol)
    throw std::invalid_argument(std::string(what) + ": amplitude exceeds the unit bound");
}

int validate_shape(const InputSignal::Shape& shape) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantSignal>) {
          if (s.value.size() == 0) throw std::invalid_argument("constant signal: empty value");
          for (Eigen::Index i = 0; i < s.value.size(); ++i) check_unit(s.value(i), "constant signal");
          return static_cast<int>(s.value.size());
        } else if constexpr (std::is_same_v<T, SinusoidSignal>) {
          const auto n = s.amplitude.size();
          if (n == 0 || s.omega.size() != n || s.phase.size() != n)
            throw std::invalid_argument("sinusoid signal: mismatched channel sizes");
          for (Eigen::Index i = 0; i < n; ++i) check_unit(s.amplitude(i), "sinusoid signal");
          return static_cast<int>(n);
        } else if constexpr (std::is_same_v<T, DecaySignal>) {
          if (s.amplitude.size() == 0) throw std::invalid_argument("decay signal: empty amplitude");
          if (!(s.rate >= 0.0)) throw std::invalid_argument("decay signal: negative rate");
          for (Eigen::Index i = 0; i < s.amplitude.size(); ++i) check_unit(s.amplitude(i), "decay signal");
          return static_cast<int>(s.amplitude.size());
        } else if constexpr (std::is_same_v<T, SignSignal>) {
          if (s.signs.size() == 0) throw std::invalid_argument("sign signal: empty");
          for (Eigen::Index i = 0; i < s.signs.size(); ++i)
            if (s.signs(i) != 1.0 && s.signs(i) != -1.0)
              throw std::invalid_argument("sign signal: entries must be +1 or -1");
          return static_cast<int>(s.signs.size());
        } else {
          static_assert(std::is_same_v<T, PiecewiseSignal>);
          if (s.breakpoints.size() < 2 || s.values.empty())
            throw std::invalid_argument("piecewise signal: needs at least one interval");
          if (s.breakpoints.front() != 0.0)
            throw std::invalid_argument("piecewise signal: breakpoints must start at 0");
          for (std::size_t k = 1; k < s.breakpoints.size(); ++k)
            if (!(s.breakpoints[k] > s.breakpoints[k - 1]))
              throw std::invalid_argument("piecewise signal: breakpoints must be strictly ascending");
          if (s.values.size() != s.breakpoints.size() - 1)
            throw std::invalid_argument("piecewise signal: one value per interval expected");
          const auto n = s.values.front().size();
          for (const auto& v : s.values) {
            if (v.size() != n) throw std::invalid_argument("piecewise signal: mismatched channel sizes");
            for (Eigen::Index i = 0; i < n; ++i) check_unit(v(i), "piecewise signal");
          }
          return static_cast<int>(n);
        }
      },
      shape);
}

}  // namespace

InputSignal::InputSignal(Shape shape, std::string label)
    : shape_(std::move(shape)), label_(std::move(label)) {
  channels_ = validate_shape(shape_);
}

bool InputSignal::is_constant() const {
  return std::holds_alternative<ConstantSignal>(shape_) ||
         std::holds_alternative<SignSignal>(shape_);
}

Vector InputSignal::operator()(double t) const {
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantSignal>) {
          return s.value;
        } else if constexpr (std::is_same_v<T, SinusoidSignal>) {
          Vector out(s.amplitude.size());
          for (Eigen::Index i = 0; i < out.size(); ++i)
            out(i) = s.amplitude(i) * std::sin(s.omega(i) * t + s.phase(i));
          return out;
        } else if constexpr (std::is_same_v<T, DecaySignal>) {
          return s.amplitude * std::exp(-s.rate * t);
        } else if constexpr (std::is_same_v<T, SignSignal>) {
          return s.signs;
        } else {
          // Last interval extends beyond the final breakpoint.
          std::size_t k = 0;
          while (k + 1 < s.values.size() && t >= s.breakpoints[k + 1]) ++k;
          return s.values[k];
        }
      },
      shape_);
}

InputSignal InputSignal::constant(Vector value, std::string label) {
  return InputSignal(ConstantSignal{std::move(value)}, std::move(label));
}

InputSignal InputSignal::sinusoid(Vector amplitude, Vector omega, Vector phase,
                                  std::string label) {
  return InputSignal(SinusoidSignal{std::move(amplitude), std::move(omega), std::move(phase)},
                     std::move(label));
}

InputSignal InputSignal::exponential_decay(Vector amplitude, double rate, std::string label) {
  return InputSignal(DecaySignal{std::move(amplitude), rate}, std::move(label));
}

InputSignal InputSignal::sign_constant(Vector signs, std::string label) {
  return InputSignal(SignSignal{std::move(signs)}, std::move(label));
}

InputSignal InputSignal::piecewise_constant(std::vector<double> breakpoints,
                                            std::vector<Vector> values, std::string label) {
  return InputSignal(PiecewiseSignal{std::move(breakpoints), std::move(values)},
                     std::move(label));
}

Vector signal_mean(const InputSignal& u, double t_f) {
  if (!(t_f > 0.0)) throw std::invalid_argument("signal_mean: t_f must be positive");
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantSignal>) {
          return s.value;
        } else if constexpr (std::is_same_v<T, SinusoidSignal>) {
          Vector out(s.amplitude.size());
          for (Eigen::Index i = 0; i < out.size(); ++i) {
            const double w = s.omega(i), ph = s.phase(i);
            if (w == 0.0)
              out(i) = s.amplitude(i) * std::sin(ph);
            else
              out(i) = s.amplitude(i) * (std::cos(ph) - std::cos(w * t_f + ph)) / (w * t_f);
          }
          return out;
        } else if constexpr (std::is_same_v<T, DecaySignal>) {
          if (s.rate == 0.0) return s.amplitude;
          return s.amplitude * (-std::expm1(-s.rate * t_f)) / (s.rate * t_f);
        } else if constexpr (std::is_same_v<T, SignSignal>) {
          return s.signs;
        } else {
          Vector acc = Vector::Zero(s.values.front().size());
          for (std::size_t k = 0; k < s.values.size(); ++k) {
            const double lo = std::min(s.breakpoints[k], t_f);
            const double hi =
                (k + 1 < s.values.size()) ? std::min(s.breakpoints[k + 1], t_f) : t_f;
            if (hi > lo) acc += (hi - lo) * s.values[k];
          }
          return acc / t_f;
        }
      },
      u.shape());
}

double signal_energy(const InputSignal& u, double t_f) {
  if (!(t_f > 0.0)) throw std::invalid_argument("signal_energy: t_f must be positive");
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantSignal>) {
          return t_f * s.value.squaredNorm();
        } else if constexpr (std::is_same_v<T, SinusoidSignal>) {
          double e = 0.0;
          for (Eigen::Index i = 0; i < s.amplitude.size(); ++i) {
            const double a = s.amplitude(i), w = s.omega(i), ph = s.phase(i);
            if (w == 0.0) {
              const double v = a * std::sin(ph);
              e += v * v * t_f;
            } else {
              // integral of a^2 sin^2(w t + ph) over [0, t_f]
              e += a * a *
                   (t_f / 2.0 - (std::sin(2.0 * (w * t_f + ph)) - std::sin(2.0 * ph)) / (4.0 * w));
            }
          }
          return e;
        } else if constexpr (std::is_same_v<T, DecaySignal>) {
          if (s.rate == 0.0) return t_f * s.amplitude.squaredNorm();
          return s.amplitude.squaredNorm() * (-std::expm1(-2.0 * s.rate * t_f)) / (2.0 * s.rate);
        } else if constexpr (std::is_same_v<T, SignSignal>) {
          return t_f * s.signs.squaredNorm();
        } else {
          double e = 0.0;
          for (std::size_t k = 0; k < s.values.size(); ++k) {
            const double lo = std::min(s.breakpoints[k], t_f);
            const double hi =
                (k + 1 < s.values.size()) ? std::min(s.breakpoints[k + 1], t_f) : t_f;
            if (hi > lo) e += (hi - lo) * s.values[k].squaredNorm();
          }
          return e;
        }
      },
      u.shape());
}

bool is_admissible(const InputSignal& u, double t_f, int grid_points, double tol) {
  if (grid_points < 2) throw std::invalid_argument("is_admissible: need at least two grid points");
  for (int k = 0; k < grid_points; ++k) {
    const double t = t_f * static_cast<double>(k) / static_cast<double>(grid_points - 1);
    if (u(t).lpNorm<Eigen::Infinity>() > 1.0 + tol) return false;
  }
  return true;
}

}  // namespace resilience
