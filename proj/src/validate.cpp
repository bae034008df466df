#include "resilience/validate.hpp"

#include "resilience/driftless.hpp"
#include "resilience/nonlinear.hpp"
#include "resilience/simulate.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>

namespace resilience::validate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void fail(SuiteResult& r, const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  r.failures.emplace_back(buf);
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = unif(rng);
  return m;
}

// Random full-row-rank matrix whose smallest singular value is at least one,
// so the pseudoinverse does not expand any direction.
Matrix random_nonexpanding_rows(std::mt19937_64& rng, int rows, int cols) {
  for (;;) {
    Matrix m = random_matrix(rng, rows, cols);
    Eigen::JacobiSVD<Matrix> svd(m);
    const double smin = svd.singularValues().minCoeff();
    if (smin < 1e-3) continue;
    if (smin < 1.0) m *= 1.0 / smin;
    return m;
  }
}

InputSignal random_signal(std::mt19937_64& rng, int channels) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  std::uniform_int_distribution<int> shape(0, 4);
  auto amplitudes = [&] {
    Vector a(channels);
    for (int i = 0; i < channels; ++i) a(i) = amp(rng);
    return a;
  };
  switch (shape(rng)) {
    case 0:
      return InputSignal::constant(amplitudes());
    case 1: {
      Vector w(channels), ph(channels);
      for (int i = 0; i < channels; ++i) {
        w(i) = 30.0 * pos(rng);
        ph(i) = 2.0 * kPi * pos(rng);
      }
      return InputSignal::sinusoid(amplitudes(), w, ph);
    }
    case 2:
      return InputSignal::exponential_decay(amplitudes(), 5.0 * pos(rng));
    case 3: {
      Vector s(channels);
      for (int i = 0; i < channels; ++i) s(i) = pos(rng) < 0.5 ? -1.0 : 1.0;
      return InputSignal::sign_constant(s);
    }
    default: {
      const int pieces = 2 + static_cast<int>(3.0 * pos(rng));
      std::vector<double> breaks{0.0};
      std::vector<Vector> values;
      for (int k = 0; k < pieces; ++k) {
        breaks.push_back(breaks.back() + 0.1 + pos(rng));
        values.push_back(amplitudes());
      }
      return InputSignal::piecewise_constant(std::move(breaks), std::move(values));
    }
  }
}

}  // namespace

SuiteResult penrose(uint64_t seed, Level level) {
  SuiteResult result;
  result.name = "penrose";
  std::mt19937_64 rng(seed ^ 0x70656e726f7365ULL);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  const int cases = level == Level::Full ? 200 : 40;

  for (int k = 0; k < cases; ++k) {
    const int rows = dim(rng), cols = dim(rng);
    Matrix m;
    if (pos(rng) < 0.3) {
      const int rank = std::max(1, std::min(rows, cols) - 1);
      m = random_matrix(rng, rows, rank) * random_matrix(rng, rank, cols);
    } else {
      m = random_matrix(rng, rows, cols);
    }
    const Matrix mp = pinv(m);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double tol = 1e-9 * scale;

    ++result.checks;
    if ((m * mp * m - m).cwiseAbs().maxCoeff() > tol ||
        (mp * m * mp - mp).cwiseAbs().maxCoeff() > tol ||
        ((m * mp) - (m * mp).transpose()).cwiseAbs().maxCoeff() > tol ||
        ((mp * m) - (mp * m).transpose()).cwiseAbs().maxCoeff() > tol) {
      fail(result, "penrose identity violated for a %dx%d matrix (case %d)", rows, cols, k);
      continue;
    }
    if (rows <= cols) {
      Eigen::JacobiSVD<Matrix> svd(m);
      if (svd.singularValues().minCoeff() > 1e-6 &&
          (m * mp - Matrix::Identity(rows, rows)).cwiseAbs().maxCoeff() > tol)
        fail(result, "full-row-rank right inverse violated (case %d)", k);
    }
  }
  return result;
}

SuiteResult jensen(uint64_t seed, Level level) {
  SuiteResult result;
  result.name = "jensen";
  std::mt19937_64 rng(seed ^ 0x6a656e73656eULL);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  std::uniform_int_distribution<int> chan(1, 4);
  const int cases = level == Level::Full ? 1000 : 200;

  for (int k = 0; k < cases; ++k) {
    const InputSignal u = random_signal(rng, chan(rng));
    const double t_f = 0.5 + 9.5 * pos(rng);
    const double energy = signal_energy(u, t_f);
    const double mean_energy = t_f * signal_mean(u, t_f).squaredNorm();
    ++result.checks;
    if (energy < mean_energy - 1e-9)
      fail(result, "mean-energy inequality violated for %s (case %d)", u.label().c_str(), k);
    if (u.is_constant() && std::abs(energy - mean_energy) > 1e-9)
      fail(result, "constant signal should meet the mean-energy bound exactly (case %d)", k);
  }
  return result;
}

SuiteResult gronwall_for(const std::vector<Model>& models, Level level,
                         std::optional<double> dt_override) {
  SuiteResult result;
  result.name = "gronwall";
  const std::vector<double> horizons =
      level == Level::Full ? std::vector<double>{0.1, 0.5, 1.0} : std::vector<double>{0.5};

  for (const Model& model : models) {
    simulate::SweepSpec spec;
    spec.channels = model.system.m + model.system.p;
    auto signals = simulate::signal_sweep(spec);
    if (level == Level::Quick && signals.size() > 4)
      signals.erase(signals.begin() + 4, signals.end());

    for (double t_f : horizons) {
      const double v_bar =
          nonlinear::response_gap_bound(model.system.d_f, model.system.d_g,
                                        model.partition.f0.lpNorm<Eigen::Infinity>(),
                                        induced_norm(model.partition.B, NormOrder::Inf),
                                        t_f)
              .v_bar;
      for (const auto& u : signals) {
        const double dt = dt_override.value_or(t_f / 1000.0);
        const Vector gap =
            nonlinear::response_gap(model.system, model.partition, u, t_f, dt);
        ++result.checks;
        if (gap.lpNorm<Eigen::Infinity>() > v_bar + 1e-6)
          fail(result, "response gap %.6g exceeds bound %.6g (signal %s, t_f %.3g)",
               gap.lpNorm<Eigen::Infinity>(), v_bar, u.label().c_str(), t_f);
      }
    }
  }
  return result;
}

SuiteResult gronwall(Level level, std::optional<double> dt_override) {
  return gronwall_for({underwater_robot_model(), admire_model(), admire_wind_model(1.0)},
                      level, dt_override);
}

SuiteResult dominance(uint64_t seed, Level level) {
  SuiteResult result;
  result.name = "dominance";
  std::mt19937_64 rng(seed ^ 0x646f6d696e616eULL);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_int_distribution<int> state_dim(1, 4);
  const int instances = level == Level::Full ? 100 : 20;

  for (int k = 0; k < instances; ++k) {
    const int n = state_dim(rng);
    const int m = n + static_cast<int>(2.0 * pos(rng));
    const Matrix B_c = random_nonexpanding_rows(rng, n, m);
    const Matrix B_uc = random_matrix(rng, n, 1);
    Matrix B(n, m + 1);
    B << B_c, B_uc;

    const double t_f = 0.2 + 5.0 * pos(rng);
    const double radius = 0.5 + 10.0 * pos(rng);
    const bool driftless_case = pos(rng) < 0.5;
    const double v_bar = driftless_case ? 0.0 : 3.0 * pos(rng);
    const double bound = nonlinear::resilience_bound_one_actuator(B, B_c, B_uc, t_f,
                                                                  radius, v_bar);

    for (int s = 0; s < 20; ++s) {
      Vector dir(n);
      for (int i = 0; i < n; ++i) dir(i) = sym(rng);
      if (dir.norm() == 0.0) continue;
      const Vector x_tilde = radius * pos(rng) * dir / dir.norm();
      Vector v = Vector::Zero(n);
      if (v_bar > 0.0)
        for (int i = 0; i < n; ++i) v(i) = v_bar * sym(rng);

      const Vector u_mean = Vector::Constant(1, sym(rng));
      const double total =
          nonlinear::malfunctioning_energy(B_c, B_uc, x_tilde, t_f, v, u_mean) +
          t_f * u_mean.squaredNorm();
      const double nominal = nonlinear::nominal_energy(B, x_tilde, t_f, v);
      ++result.checks;
      if (total - nominal > bound + 1e-9)
        fail(result, "constant input beats the bound by %.3g (instance %d)",
             total - nominal - bound, k);
    }
  }

  // The bundled driftless example, scanned over the radius sphere.
  {
    const Model model = underwater_robot_model();
    const auto& part = model.partition;
    const double t_f = 10.0, radius = 100.0;
    const double bound =
        driftless::resilience_bound(part.B, part.B_c, part.B_uc, t_f, radius);
    for (int deg = 0; deg < 360; deg += 5) {
      const double th = deg * kPi / 180.0;
      Vector x_tilde(2);
      x_tilde << radius * std::cos(th), radius * std::sin(th);
      for (double u : {-1.0, -0.5, 0.5, 1.0}) {
        const double total = driftless::malfunctioning_energy(
                                 part.B_c, part.B_uc, x_tilde, t_f,
                                 Vector::Constant(1, u)) +
                             t_f * u * u;
        const double nominal = driftless::nominal_energy(part.B, x_tilde, t_f);
        ++result.checks;
        if (total - nominal > bound + 1e-9)
          fail(result, "bundled driftless example violates the bound at %d degrees", deg);
      }
    }
  }
  return result;
}

SuiteResult reduction(uint64_t seed, Level level) {
  SuiteResult result;
  result.name = "reduction";
  std::mt19937_64 rng(seed ^ 0x7265647563ULL);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_int_distribution<int> state_dim(1, 4);
  const int instances = level == Level::Full ? 100 : 25;

  for (int k = 0; k < instances; ++k) {
    const int n = state_dim(rng);
    const int p = 1 + static_cast<int>(2.0 * pos(rng));
    const int m = n + static_cast<int>(2.0 * pos(rng));
    const Matrix B_c = random_nonexpanding_rows(rng, n, m);
    const Matrix B_uc = random_matrix(rng, n, p);
    Matrix B(n, m + p);
    B << B_c, B_uc;

    const double t_f = 0.2 + 5.0 * pos(rng);
    const double radius = 10.0 * pos(rng);
    Vector x_tilde(n);
    for (int i = 0; i < n; ++i) x_tilde(i) = 5.0 * sym(rng);
    Vector u_mean(p);
    for (int i = 0; i < p; ++i) u_mean(i) = sym(rng);
    const Vector v0 = Vector::Zero(n);

    auto close = [](double a, double b) {
      return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };

    ++result.checks;
    if (!close(nonlinear::nominal_energy(B, x_tilde, t_f, v0),
               driftless::nominal_energy(B, x_tilde, t_f)))
      fail(result, "nominal energy reduction mismatch (instance %d)", k);

    ++result.checks;
    if (!close(nonlinear::malfunctioning_energy(B_c, B_uc, x_tilde, t_f, v0, u_mean),
               driftless::malfunctioning_energy(B_c, B_uc, x_tilde, t_f, u_mean)))
      fail(result, "malfunctioning energy reduction mismatch (instance %d)", k);

    ++result.checks;
    if (!close(nonlinear::worst_case_total_bound(B_c, B_uc, x_tilde, t_f, v0),
               driftless::worst_case_total_bound(B_c, B_uc, x_tilde, t_f)))
      fail(result, "worst-case bound reduction mismatch (instance %d)", k);

    if (p == 1) {
      const auto approx =
          nonlinear::worst_case_total_one_actuator(B_c, B_uc, x_tilde, t_f, v0);
      const auto exact = driftless::worst_case_total_one_actuator(B_c, B_uc, x_tilde, t_f);
      ++result.checks;
      if (!close(approx.value, exact.value) || approx.sign != exact.sign)
        fail(result, "one-actuator worst case reduction mismatch (instance %d)", k);

      ++result.checks;
      if (!close(nonlinear::resilience_bound_one_actuator(B, B_c, B_uc, t_f, radius, 0.0),
                 driftless::resilience_bound(B, B_c, B_uc, t_f, radius)))
        fail(result, "resilience bound reduction mismatch (instance %d)", k);
    }
  }
  return result;
}

SuiteResult achievability(uint64_t seed, Level level) {
  SuiteResult result;
  result.name = "achievability";
  std::mt19937_64 rng(seed ^ 0x616368696576ULL);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  const int instances = level == Level::Full ? 100 : 25;

  auto check_instance = [&](double b_c, double b_uc, double t_f, double radius) {
    Matrix B(1, 2), B_c(1, 1), B_uc(1, 1);
    B << b_c, b_uc;
    B_c << b_c;
    B_uc << b_uc;
    const double bound = driftless::resilience_bound(B, B_c, B_uc, t_f, radius);

    double sup = -std::numeric_limits<double>::infinity();
    for (double x : {-radius, radius}) {
      for (double u : {-1.0, 1.0}) {
        Vector x_tilde = Vector::Constant(1, x);
        const double total = driftless::malfunctioning_energy(B_c, B_uc, x_tilde, t_f,
                                                              Vector::Constant(1, u)) +
                             t_f * u * u;
        sup = std::max(sup, total - driftless::nominal_energy(B, x_tilde, t_f));
      }
    }
    ++result.checks;
    if (std::abs(sup - bound) > 1e-9 * std::max(1.0, bound))
      fail(result, "scalar supremum %.12g misses the bound %.12g", sup, bound);
  };

  check_instance(1.0, 1.0, 1.0, 1.0);
  for (int k = 1; k < instances; ++k) {
    const double b_c = pos(rng) < 0.5 ? -1.0 : 1.0;
    const double b_uc = (0.1 + 1.9 * pos(rng)) * (pos(rng) < 0.5 ? -1.0 : 1.0);
    check_instance(b_c, b_uc, 0.2 + 5.0 * pos(rng), 0.1 + 10.0 * pos(rng));
  }
  return result;
}

std::vector<SuiteResult> run_all(uint64_t seed, Level level,
                                 std::optional<double> dt_override) {
  return {penrose(seed, level),   jensen(seed, level),
          gronwall(level, dt_override), dominance(seed, level),
          reduction(seed, level), achievability(seed, level)};
}

}  // namespace resilience::validate
