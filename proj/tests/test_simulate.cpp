#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resilience/driftless.hpp"
#include "resilience/simulate.hpp"

#include <cmath>

using namespace resilience;

namespace {

Matrix expm(const Matrix& a) {
  Matrix scaled = a;
  int squarings = 0;
  while (induced_norm(scaled, NormOrder::Inf) > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("fixed-step integration is exact for driftless constant inputs") {
  const Model model = underwater_robot_model();
  const Vector u_val = (Vector(3) << 0.3, -0.5, 0.8).finished();
  const auto u = InputSignal::constant(u_val);
  const double t_f = 2.0;
  const auto traj = simulate::integrate(model.system, u, model.task.x0, t_f, t_f / 100.0);

  const Vector expected = model.task.x0 + t_f * model.partition.B * u_val;
  CHECK((traj.terminal_state() - expected).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK(traj.times.size() == traj.states.size());
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(t_f));
}

TEST_CASE("linear drift matches the matrix-exponential solution") {
  const Model model = admire_model();
  const auto zero = InputSignal::constant(Vector::Zero(4));
  const double t_f = 1.0;
  const auto traj =
      simulate::integrate(model.system, zero, model.task.x0, t_f, 1e-3);
  const Vector expected = expm(model.system.A * t_f) * model.task.x0;
  CHECK((traj.terminal_state() - expected).lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("integrator error shrinks at fourth order on the linear model") {
  const Model model = admire_model();
  const auto zero = InputSignal::constant(Vector::Zero(4));
  const double t_f = 1.0;
  const Vector reference = expm(model.system.A * t_f) * model.task.x0;

  std::vector<double> steps{1e-2, 5e-3, 2.5e-3};
  std::vector<double> errors;
  for (double dt : steps) {
    const auto traj =
        simulate::integrate(model.system, zero, model.task.x0, t_f, dt, false);
    errors.push_back((traj.terminal_state() - reference).lpNorm<Eigen::Infinity>());
  }
  const double slope01 = std::log(errors[0] / errors[1]) / std::log(steps[0] / steps[1]);
  const double slope12 = std::log(errors[1] / errors[2]) / std::log(steps[1] / steps[2]);
  CHECK(slope01 == doctest::Approx(4.0).epsilon(0.075));
  CHECK(slope12 == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("the wind model integrates to a finite state under no input") {
  const Model model = admire_wind_model(1.0);
  const auto zero = InputSignal::constant(Vector::Zero(4));
  const auto traj = simulate::integrate(model.system, zero, model.task.x0, 1.0, 1e-3);
  CHECK(traj.terminal_state().allFinite());
}

TEST_CASE("integration rejects bad steps and flags blow-ups") {
  const Model model = admire_model();
  const auto zero = InputSignal::constant(Vector::Zero(4));
  CHECK_THROWS_AS(simulate::integrate(model.system, zero, model.task.x0, 1.0, 0.3),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate::integrate(model.system, zero, model.task.x0, 1.0, -0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      simulate::integrate(model.system, InputSignal::constant(Vector::Zero(3)),
                          model.task.x0, 1.0, 1e-2),
      std::invalid_argument);

  // An unstable scalar system overflows quickly.
  ControlSystem unstable;
  unstable.kind = SystemKind::LinearDrift;
  unstable.n = 1;
  unstable.m = 1;
  unstable.p = 1;
  unstable.d_f = 50.0;
  unstable.A = Matrix::Constant(1, 1, 50.0);
  unstable.B0 = Matrix::Ones(1, 2);
  CHECK_THROWS_WITH_AS(
      simulate::integrate(unstable, InputSignal::constant(Vector::Zero(2)),
                          Vector::Constant(1, 1e300), 100.0, 0.1, false),
      doctest::Contains("blew up"), std::runtime_error);
}

TEST_CASE("the default signal sweep provides ten admissible signals") {
  simulate::SweepSpec spec;
  const auto signals = simulate::signal_sweep(spec);
  REQUIRE(signals.size() == 10);
  for (const auto& u : signals) {
    CHECK(u.channels() == 1);
    CHECK(is_admissible(u, 2.0));
  }
  CHECK(signals.back().label() == "worst_sign");

  // The worst-case entry passes the supplied signs through.
  simulate::SweepSpec with_signs;
  with_signs.worst_case_signs = Vector::Constant(1, -1.0);
  const auto swept = simulate::signal_sweep(with_signs);
  CHECK(swept.back()(0.0)(0) == -1.0);
}

TEST_CASE("signal sweep rejects empty specs and oversized amplitudes") {
  simulate::SweepSpec empty;
  empty.sinusoid_freqs.clear();
  empty.constant_levels.clear();
  empty.decay_rates.clear();
  empty.include_worst_case = false;
  CHECK_THROWS_AS(simulate::signal_sweep(empty), std::invalid_argument);

  simulate::SweepSpec loud;
  loud.constant_levels = {1.5};
  CHECK_THROWS_AS(simulate::signal_sweep(loud), std::invalid_argument);
}

TEST_CASE("brute-force constant minimum brackets the closed form") {
  const Matrix eye = Matrix::Identity(2, 2);
  const Vector xt = (Vector(2) << 1.0, 0.0).finished();
  const double value = simulate::brute_force_constant_min(eye, xt, 2.0, 1e-2);
  CHECK(value >= 0.5 - 0.06);
  CHECK(value <= 0.5 + 0.03);

  CHECK_THROWS_WITH_AS(simulate::brute_force_constant_min(eye, xt, 0.3, 1e-2),
                       doctest::Contains("unreachable"), std::runtime_error);
  CHECK_THROWS_AS(simulate::brute_force_constant_min(Matrix::Ones(2, 4), xt, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("golden-section final time agrees with the closed form") {
  const Model model = underwater_robot_model();
  const auto& part = model.partition;
  const Vector u = Vector::Constant(1, 1.0);

  const double searched =
      simulate::brute_force_optimal_time(part.B_c, part.B_uc, model.task.x_tilde, u);
  const double closed =
      driftless::optimal_final_time(part.B_c, part.B_uc, model.task.x_tilde, u);
  CHECK(std::abs(searched - closed) <= 1e-6 * closed);

  // Doubling the displacement doubles the minimizer; flipping the input sign
  // leaves it unchanged.
  const double doubled = simulate::brute_force_optimal_time(part.B_c, part.B_uc,
                                                            2.0 * model.task.x_tilde, u);
  CHECK(doubled == doctest::Approx(2.0 * searched).epsilon(1e-5));
  const double flipped = simulate::brute_force_optimal_time(part.B_c, part.B_uc,
                                                            model.task.x_tilde, -u);
  CHECK(flipped == doctest::Approx(searched).epsilon(1e-6));
}
