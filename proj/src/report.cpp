#include "resilience/report.hpp"

#include "resilience/driftless.hpp"
#include "resilience/nonlinear.hpp"

#include <cmath>
#include <ostream>

namespace resilience {

namespace {

std::vector<Vector> gap_box_candidates(int n, double v_bar) {
  std::vector<Vector> out;
  out.push_back(Vector::Zero(n));
  if (v_bar <= 0.0 || n > 16) return out;
  for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = (mask >> i) & 1 ? v_bar : -v_bar;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

EnergyReport build_energy_report(const Model& model, std::optional<double> t_f_override) {
  const ControlSystem& sys = model.system;
  const ActuatorPartition& part = model.partition;
  const Vector& x_tilde = model.task.x_tilde;
  const double t_f = t_f_override.value_or(model.task.t_f);
  if (!(t_f > 0.0)) throw std::invalid_argument("t_f must be positive");

  EnergyReport rep;
  rep.kind = sys.kind;
  rep.n = sys.n;
  rep.m = sys.m;
  rep.p = sys.p;
  rep.t_f = t_f;
  rep.radius = model.task.radius.value_or(x_tilde.norm());

  rep.v_bar = nonlinear::response_gap_bound(sys.d_f, sys.d_g,
                                            part.f0.lpNorm<Eigen::Infinity>(),
                                            induced_norm(part.B, NormOrder::Inf), t_f)
                  .v_bar;

  const Vector v0 = Vector::Zero(sys.n);
  const Vector signs = nonlinear::worst_uncontrolled_signs(part.B_c, part.B_uc, x_tilde, v0);

  rep.e_nominal = nonlinear::nominal_energy(part.B, x_tilde, t_f, v0);
  rep.e_malfunctioning =
      nonlinear::malfunctioning_energy(part.B_c, part.B_uc, x_tilde, t_f, v0, signs);
  rep.e_total = rep.e_malfunctioning + t_f * static_cast<double>(sys.p);

  double worst = -std::numeric_limits<double>::infinity();
  for (const Vector& v : gap_box_candidates(sys.n, rep.v_bar)) {
    double value;
    if (sys.p == 1) {
      const auto wct = nonlinear::worst_case_total_one_actuator(part.B_c, part.B_uc,
                                                                x_tilde, t_f, v);
      value = wct.value;
      if (v.isZero()) {
        rep.worst_sign = wct.sign;
        rep.degenerate_sign = wct.degenerate;
      }
    } else {
      value = nonlinear::worst_case_total_bound(part.B_c, part.B_uc, x_tilde, t_f, v);
    }
    worst = std::max(worst, value);
  }
  rep.e_worst_total = worst;

  rep.r_a_bound =
      sys.p == 1
          ? nonlinear::resilience_bound_one_actuator(part.B, part.B_c, part.B_uc, t_f,
                                                     rep.radius, rep.v_bar)
          : nonlinear::resilience_bound(part.B, part.B_c, part.B_uc, t_f, rep.radius,
                                        rep.v_bar);

  const Exactness tag =
      sys.kind == SystemKind::Driftless ? Exactness::Exact : Exactness::Approximate;
  rep.tag_nominal = rep.tag_malfunctioning = rep.tag_total = rep.tag_worst_total =
      rep.tag_r_a_bound = tag;

  rep.feasible_displacement = driftless::feasible(part.B, x_tilde, t_f);
  rep.feasible_nominal = nonlinear::feasible_nominal(part.B, x_tilde, t_f, rep.v_bar);
  rep.feasible_malfunctioning =
      nonlinear::feasible_malfunctioning(part.B_c, part.B_uc, x_tilde, t_f, rep.v_bar);
  return rep;
}

namespace {

const char* kind_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::Driftless: return "driftless";
    case SystemKind::LinearDrift: return "linear";
    case SystemKind::GeneralNonlinear: return "nonlinear";
  }
  return "?";
}

const char* tag_name(Exactness tag) {
  return tag == Exactness::Exact ? "exact" : "approximate";
}

}  // namespace

void print_report(const EnergyReport& r, std::ostream& os) {
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  os << "kind=" << kind_name(r.kind) << '\n'
     << "n=" << r.n << '\n'
     << "m=" << r.m << '\n'
     << "p=" << r.p << '\n'
     << "t_f=" << num(r.t_f) << '\n'
     << "radius=" << num(r.radius) << '\n'
     << "v_bar=" << num(r.v_bar) << '\n'
     << "feasible_displacement=" << (r.feasible_displacement ? 1 : 0) << '\n'
     << "feasible_nominal=" << (r.feasible_nominal ? 1 : 0) << '\n'
     << "feasible_malfunctioning=" << (r.feasible_malfunctioning ? 1 : 0) << '\n'
     << "e_nominal=" << num(r.e_nominal) << '\n'
     << "e_nominal_tag=" << tag_name(r.tag_nominal) << '\n'
     << "e_malfunctioning=" << num(r.e_malfunctioning) << '\n'
     << "e_malfunctioning_tag=" << tag_name(r.tag_malfunctioning) << '\n'
     << "e_total=" << num(r.e_total) << '\n'
     << "e_total_tag=" << tag_name(r.tag_total) << '\n'
     << "e_worst_total=" << num(r.e_worst_total) << '\n'
     << "e_worst_total_tag=" << tag_name(r.tag_worst_total) << '\n'
     << "r_a_bound=" << num(r.r_a_bound) << '\n'
     << "r_a_bound_tag=" << tag_name(r.tag_r_a_bound) << '\n';
  if (r.worst_sign)
    os << "worst_sign=" << num(*r.worst_sign) << '\n'
       << "degenerate_sign=" << (r.degenerate_sign ? 1 : 0) << '\n';
}

}  // namespace resilience
