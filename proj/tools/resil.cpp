#include "resilience/driftless.hpp"
#include "resilience/model.hpp"
#include "resilience/nonlinear.hpp"
#include "resilience/report.hpp"
#include "resilience/sweep.hpp"
#include "resilience/validate.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitInputError = 2;

std::optional<double> integrator_step_override() {
  const char* env = std::getenv("RESIL_DT");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const double dt = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(dt > 0.0))
    throw std::invalid_argument("RESIL_DT must be a positive number");
  return dt;
}

int cmd_energy(const std::string& model_path, std::optional<double> t_f) {
  const resilience::Model model = resilience::load_model(model_path);
  const auto report = resilience::build_energy_report(model, t_f);
  resilience::print_report(report, std::cout);
  return kExitOk;
}

int cmd_resilience(const std::string& model_path, double radius,
                   std::optional<double> t_f_override) {
  const resilience::Model model = resilience::load_model(model_path);
  const auto& part = model.partition;
  const auto& sys = model.system;
  const double t_f = t_f_override.value_or(model.task.t_f);

  const double v_bar =
      resilience::nonlinear::response_gap_bound(
          sys.d_f, sys.d_g, part.f0.lpNorm<Eigen::Infinity>(),
          resilience::induced_norm(part.B, resilience::NormOrder::Inf), t_f)
          .v_bar;
  const double bound =
      sys.p == 1 ? resilience::nonlinear::resilience_bound_one_actuator(
                       part.B, part.B_c, part.B_uc, t_f, radius, v_bar)
                 : resilience::nonlinear::resilience_bound(part.B, part.B_c, part.B_uc,
                                                           t_f, radius, v_bar);
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  std::cout << "t_f=" << num(t_f) << '\n'
            << "radius=" << num(radius) << '\n'
            << "v_bar=" << num(v_bar) << '\n'
            << "r_a_bound=" << num(bound) << '\n'
            << "r_a_bound_tag="
            << (sys.kind == resilience::SystemKind::Driftless ? "exact" : "approximate")
            << '\n';
  return kExitOk;
}

int cmd_opt_tf(const std::string& model_path, const std::vector<double>& u_uc) {
  const resilience::Model model = resilience::load_model(model_path);
  const auto& part = model.partition;
  if (static_cast<int>(u_uc.size()) != model.system.p)
    throw std::invalid_argument("--uuc must supply one value per uncontrolled input");
  resilience::Vector mean(u_uc.size());
  for (std::size_t i = 0; i < u_uc.size(); ++i) mean(i) = u_uc[i];

  const double t_star = resilience::driftless::optimal_final_time(
      part.B_c, part.B_uc, model.task.x_tilde, mean);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", t_star);
  std::cout << "t_f_star=" << buf << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& model_path, const resilience::SweepOptions& options,
              const std::string& out_path) {
  const resilience::Model model = resilience::load_model(model_path);
  const auto result = resilience::run_sweep(model, options);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  resilience::write_csv(result, out);
  return kExitOk;
}

int cmd_validate(uint64_t seed, const std::string& level_name) {
  const auto level = level_name == "quick" ? resilience::validate::Level::Quick
                                           : resilience::validate::Level::Full;
  const auto suites = resilience::validate::run_all(seed, level, integrator_step_override());

  bool ok = true;
  for (const auto& suite : suites) {
    std::cout << suite.name << ": " << (suite.passed() ? "pass" : "FAIL") << " ("
              << suite.checks << " checks)" << '\n';
    for (const auto& msg : suite.failures) {
      std::cout << "  " << msg << '\n';
      ok = false;
    }
  }
  return ok ? kExitOk : kExitInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy bounds for control systems losing authority over actuators"};
  app.require_subcommand(1);

  std::string model_path, out_path, level = "full";
  double radius = 0.0;
  std::optional<double> t_f;
  std::vector<double> u_uc;
  uint64_t seed = 0;
  resilience::SweepOptions sweep_options;

  auto* energy = app.add_subcommand("energy", "Energy report for a model's task");
  energy->add_option("model", model_path, "model definition file")->required();
  energy->add_option("--tf", t_f, "override the task final time");

  auto* resilience_cmd =
      app.add_subcommand("resilience", "Resilience metric bound at a given radius");
  resilience_cmd->add_option("model", model_path, "model definition file")->required();
  resilience_cmd->add_option("--R", radius, "radius bound on |x0 - x_tg|_2")->required();
  resilience_cmd->add_option("--tf", t_f, "override the task final time");

  auto* opt_tf = app.add_subcommand("opt-tf", "Energy-minimizing final time");
  opt_tf->add_option("model", model_path, "model definition file")->required();
  opt_tf->add_option("--uuc", u_uc, "constant uncontrolled input (one value per channel)")
      ->required();

  auto* sweep = app.add_subcommand("sweep", "Radius sweep written as CSV");
  sweep->add_option("model", model_path, "model definition file")->required();
  sweep->add_option("--r-min", sweep_options.r_min, "smallest radius")->required();
  sweep->add_option("--r-max", sweep_options.r_max, "largest radius")->required();
  sweep->add_option("--points", sweep_options.points, "number of radii (>= 2)")->required();
  sweep->add_option("--tf", sweep_options.t_f, "final time")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();

  auto* validate = app.add_subcommand("validate", "Run the invariant suites");
  validate->add_option("--seed", seed, "random seed");
  validate->add_option("--level", level, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (energy->parsed()) return cmd_energy(model_path, t_f);
    if (resilience_cmd->parsed()) return cmd_resilience(model_path, radius, t_f);
    if (opt_tf->parsed()) return cmd_opt_tf(model_path, u_uc);
    if (sweep->parsed()) return cmd_sweep(model_path, sweep_options, out_path);
    if (validate->parsed()) return cmd_validate(seed, level);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
