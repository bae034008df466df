#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "resilience/nonlinear.hpp"
#include "resilience/report.hpp"
#include "resilience/sweep.hpp"

#include <sstream>

using namespace resilience;

TEST_CASE("robot sweep rows honor the dominance invariant") {
  const Model model = underwater_robot_model();
  SweepOptions options{100.0, 10000.0, 8, 10.0};
  const auto result = run_sweep(model, options);
  REQUIRE(result.rows.size() == 8);
  REQUIRE(result.signal_labels.size() == 10);

  double prev_radius = 0.0;
  for (const auto& row : result.rows) {
    CHECK(row.radius > prev_radius);
    prev_radius = row.radius;
    CHECK(row.gap == doctest::Approx(row.e_worst_total - row.e_nominal));
    CHECK(row.gap <= row.r_a_bound + 1e-9);
    for (double total : row.signal_totals) {
      CHECK(std::isfinite(total));
      CHECK(total - row.e_nominal <= row.r_a_bound + 1e-9);
    }
    // The worst-sign signal dominates the other tested signals.
    const double worst = row.signal_totals.back();
    for (double total : row.signal_totals) CHECK(total <= worst + 1e-9);
  }

  // Driftless rows recompute from the closed forms at the maximizing
  // direction; the bound itself is direction-free.
  const double bound = driftless::resilience_bound(model.partition.B, model.partition.B_c,
                                                   model.partition.B_uc, 10.0, 100.0);
  CHECK(result.rows.front().r_a_bound == doctest::Approx(bound).epsilon(1e-15));
}

TEST_CASE("jet sweep rows stay below the resilience bound") {
  const Model model = admire_model();
  SweepOptions options{0.1, 10.0, 5, 1.0};
  const auto result = run_sweep(model, options);
  for (const auto& row : result.rows) {
    CHECK(row.gap <= row.r_a_bound + 1e-9);
    for (double total : row.signal_totals)
      CHECK(total - row.e_nominal <= row.r_a_bound + 1e-9);
  }
}

TEST_CASE("the bound column grows with the wind amplitude") {
  SweepOptions options{0.5, 2.0, 3, 1.0};
  double prev = -1.0;
  for (double amplitude : {0.5, 1.0, 2.0}) {
    const auto result = run_sweep(admire_wind_model(amplitude), options);
    CHECK(result.rows[1].r_a_bound > prev);
    prev = result.rows[1].r_a_bound;
  }
}

TEST_CASE("sweep rejects degenerate grids") {
  const Model model = underwater_robot_model();
  CHECK_THROWS_AS(run_sweep(model, SweepOptions{1.0, 10.0, 1, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(run_sweep(model, SweepOptions{0.0, 10.0, 5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(run_sweep(model, SweepOptions{1.0, 10.0, 5, 0.0}), std::invalid_argument);
}

TEST_CASE("CSV output is deterministic and parses back row for row") {
  const Model model = underwater_robot_model();
  SweepOptions options{100.0, 1000.0, 4, 10.0};
  const auto result = run_sweep(model, options);

  std::ostringstream first, second;
  write_csv(result, first);
  write_csv(run_sweep(model, options), second);
  CHECK(first.str() == second.str());

  std::istringstream in(first.str());
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("R,e_nominal,e_worst_total,gap,r_a_bound,feasible,total_", 0) == 0);
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(fields, field, ',')) values.push_back(std::stod(field));
    REQUIRE(values.size() == 6 + result.signal_labels.size());
    const auto& row = result.rows[rows - 1];
    CHECK(values[0] == row.radius);  // 17 significant digits round-trip
    CHECK(values[3] == row.gap);
    CHECK(values[4] == row.r_a_bound);
  }
  CHECK(rows == 4);
}

TEST_CASE("direction grids are unit length and sign-symmetric") {
  for (int n : {1, 2, 3, 5}) {
    const auto dirs = direction_grid(n);
    CHECK_FALSE(dirs.empty());
    for (const auto& d : dirs) {
      REQUIRE(d.size() == n);
      CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(direction_grid(2).size() == 360);
}

TEST_CASE("energy report for the robot model carries the exact closed forms") {
  const Model model = underwater_robot_model();
  const auto report = build_energy_report(model);

  CHECK(report.kind == SystemKind::Driftless);
  CHECK(report.v_bar == 0.0);
  CHECK(report.tag_nominal == Exactness::Exact);
  CHECK(report.tag_worst_total == Exactness::Exact);

  const auto& part = model.partition;
  const auto& task = model.task;
  CHECK(report.e_nominal ==
        doctest::Approx(driftless::nominal_energy(part.B, task.x_tilde, task.t_f))
            .epsilon(1e-15));
  const auto wct = driftless::worst_case_total_one_actuator(part.B_c, part.B_uc,
                                                            task.x_tilde, task.t_f);
  CHECK(report.e_worst_total == doctest::Approx(wct.value).epsilon(1e-15));
  REQUIRE(report.worst_sign.has_value());
  CHECK(*report.worst_sign == wct.sign);
  CHECK(report.e_malfunctioning ==
        doctest::Approx(driftless::malfunctioning_energy(
                            part.B_c, part.B_uc, task.x_tilde, task.t_f,
                            Vector::Constant(1, wct.sign)))
            .epsilon(1e-15));
  CHECK(report.e_total == doctest::Approx(report.e_malfunctioning + task.t_f));
  CHECK(report.feasible_displacement);
  CHECK(report.feasible_nominal);
  CHECK(report.feasible_malfunctioning);
  CHECK(report.r_a_bound ==
        doctest::Approx(driftless::resilience_bound(part.B, part.B_c, part.B_uc, task.t_f,
                                                    100.0))
            .epsilon(1e-15));
}

TEST_CASE("energy report marks drifting systems approximate") {
  const auto report = build_energy_report(admire_model());
  CHECK(report.kind == SystemKind::LinearDrift);
  CHECK(report.tag_nominal == Exactness::Approximate);
  CHECK(report.tag_r_a_bound == Exactness::Approximate);
  CHECK(report.v_bar > 0.0);
  // The worst case over the gap box cannot fall below the gap-free total.
  CHECK(report.e_worst_total >= report.e_total - 1e-9);

  std::ostringstream os;
  print_report(report, os);
  CHECK(os.str().find("e_nominal_tag=approximate") != std::string::npos);
  CHECK(os.str().find("kind=linear") != std::string::npos);
}

TEST_CASE("energy report honors a final-time override") {
  const Model model = underwater_robot_model();
  const auto base = build_energy_report(model);
  const auto doubled = build_energy_report(model, 20.0);
  CHECK(doubled.t_f == 20.0);
  CHECK(doubled.e_nominal == doctest::Approx(base.e_nominal / 2.0));
}
