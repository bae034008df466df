#include "resilience/sweep.hpp"

#include "resilience/nonlinear.hpp"
#include "resilience/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

namespace resilience {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Vector> box_vertices(int n, double half_width) {
  std::vector<Vector> out;
  out.push_back(Vector::Zero(n));
  if (half_width <= 0.0 || n > 16) return out;
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? half_width : -half_width;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<Vector> direction_grid(int n) {
  std::vector<Vector> dirs;
  if (n == 1) {
    dirs.push_back(Vector::Constant(1, 1.0));
    dirs.push_back(Vector::Constant(1, -1.0));
  } else if (n == 2) {
    for (int deg = 0; deg < 360; ++deg) {
      const double th = deg * kPi / 180.0;
      Vector d(2);
      d << std::cos(th), std::sin(th);
      dirs.push_back(std::move(d));
    }
  } else if (n == 3) {
    Vector pole(3);
    pole << 0.0, 0.0, 1.0;
    dirs.push_back(pole);
    dirs.push_back(-pole);
    for (int polar = 6; polar < 180; polar += 6) {
      const double th = polar * kPi / 180.0;
      for (int az = 0; az < 360; az += 6) {
        const double ph = az * kPi / 180.0;
        Vector d(3);
        d << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th);
        dirs.push_back(std::move(d));
      }
    }
  } else {
    std::mt19937_64 rng(0x5d1703e2a9c4b8f6ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
      Vector d(n);
      do {
        for (int i = 0; i < n; ++i) d(i) = gauss(rng);
      } while (d.norm() == 0.0);
      dirs.push_back(d / d.norm());
    }
  }
  return dirs;
}

SweepResult run_sweep(const Model& model, const SweepOptions& options) {
  if (!(options.r_min > 0.0) || !(options.r_max >= options.r_min))
    throw std::invalid_argument("sweep: need 0 < r_min <= r_max");
  if (options.points < 2) throw std::invalid_argument("sweep: need at least two points");
  if (!(options.t_f > 0.0)) throw std::invalid_argument("sweep: t_f must be positive");

  const ControlSystem& sys = model.system;
  const ActuatorPartition& part = model.partition;
  const double t_f = options.t_f;
  const double b_inf = induced_norm(part.B, NormOrder::Inf);
  const auto dirs = direction_grid(sys.n);

  SweepResult result;
  {
    simulate::SweepSpec probe;
    probe.channels = sys.p;
    for (const auto& sig : simulate::signal_sweep(probe))
      result.signal_labels.push_back(sig.label());
  }

  for (int k = 0; k < options.points; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(options.points - 1);
    const double radius =
        options.r_min * std::pow(options.r_max / options.r_min, frac);

    // Response-gap bound valid for every initial condition scanned below.
    double f0_inf = 0.0;
    for (const Vector& d : dirs)
      f0_inf = std::max(f0_inf,
                        sys.drift(model.task.x_tg + radius * d).lpNorm<Eigen::Infinity>());
    const double v_bar =
        nonlinear::response_gap_bound(sys.d_f, sys.d_g, f0_inf, b_inf, t_f).v_bar;

    const auto gap_candidates = box_vertices(sys.n, v_bar);

    SweepRow row;
    row.radius = radius;
    double best_gap = -std::numeric_limits<double>::infinity();
    Vector best_x_tilde, best_v;
    for (const Vector& d : dirs) {
      const Vector x_tilde = radius * d;
      for (const Vector& v : gap_candidates) {
        const double worst =
            sys.p == 1
                ? nonlinear::worst_case_total_one_actuator(part.B_c, part.B_uc, x_tilde,
                                                           t_f, v)
                      .value
                : nonlinear::worst_case_total_bound(part.B_c, part.B_uc, x_tilde, t_f, v);
        const double nominal = nonlinear::nominal_energy(part.B, x_tilde, t_f, v);
        if (worst - nominal > best_gap) {
          best_gap = worst - nominal;
          best_x_tilde = x_tilde;
          best_v = v;
          row.e_nominal = nominal;
          row.e_worst_total = worst;
        }
      }
    }
    row.gap = best_gap;

    row.r_a_bound =
        sys.p == 1
            ? nonlinear::resilience_bound_one_actuator(part.B, part.B_c, part.B_uc, t_f,
                                                       radius, v_bar)
            : nonlinear::resilience_bound(part.B, part.B_c, part.B_uc, t_f, radius, v_bar);

    row.feasible = nonlinear::feasible_nominal(part.B, best_x_tilde, t_f, v_bar) &&
                   nonlinear::feasible_malfunctioning(part.B_c, part.B_uc, best_x_tilde,
                                                      t_f, v_bar);

    simulate::SweepSpec spec;
    spec.channels = sys.p;
    spec.worst_case_signs =
        nonlinear::worst_uncontrolled_signs(part.B_c, part.B_uc, best_x_tilde, best_v);
    for (const auto& sig : simulate::signal_sweep(spec)) {
      const double total = nonlinear::malfunctioning_energy(part.B_c, part.B_uc,
                                                            best_x_tilde, t_f, best_v,
                                                            signal_mean(sig, t_f)) +
                           signal_energy(sig, t_f);
      row.signal_totals.push_back(total);
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_csv(const SweepResult& result, std::ostream& os) {
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };

  os << "R,e_nominal,e_worst_total,gap,r_a_bound,feasible";
  for (const auto& label : result.signal_labels) os << ",total_" << label;
  os << '\n';
  for (const auto& row : result.rows) {
    os << num(row.radius) << ',' << num(row.e_nominal) << ',' << num(row.e_worst_total)
       << ',' << num(row.gap) << ',' << num(row.r_a_bound) << ','
       << (row.feasible ? 1 : 0);
    for (double total : row.signal_totals) os << ',' << num(total);
    os << '\n';
  }
}

}  // namespace resilience
