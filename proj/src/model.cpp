#include "resilience/model.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace resilience {

using nlohmann::json;

Vector WindField::operator()(const Vector& x) const {
  if (family != "admire_wind")
    throw std::logic_error("unknown wind family: " + family);
  if (x.size() != 3)
    throw std::invalid_argument("admire_wind expects a 3-state system");
  Vector w(3);
  const double c = std::cos(x(0));
  w << std::sin(x(0)) * c * c, -std::sin(2.0 * x(1)), 1.0;
  return 0.5 * amplitude * w;
}

Vector ControlSystem::drift(const Vector& x) const {
  if (kind == SystemKind::Driftless) return Vector::Zero(n);
  Vector f = A * x;
  if (wind) f += (*wind)(x);
  return f;
}

namespace {

constexpr double kRankResidualTol = 1e-8;
constexpr int kLipschitzSamplePairs = 1000;
constexpr uint64_t kLipschitzSeed = 0x2f5a1c9d3e7b4680ULL;

void require_finite(const Matrix& m, const std::string& name) {
  if (!m.allFinite())
    throw ValidationError(name + " contains non-finite entries");
}

void check_full_row_rank(const Matrix& m, const std::string& name) {
  const Matrix residual = m * pinv(m) - Matrix::Identity(m.rows(), m.rows());
  if (residual.cwiseAbs().maxCoeff() > kRankResidualTol)
    throw ValidationError(name + " is not full row rank (pseudoinverse residual " +
                          std::to_string(residual.cwiseAbs().maxCoeff()) + ")");
}

// Spot-check the declared Lipschitz constants of f and g by sampling state
// pairs in a box around x0; the box sign-pattern vertices are probed as well,
// which catches an understated constant exactly for linear drift.
void check_lipschitz(const ControlSystem& sys, const Vector& x0, double half_width) {
  const int n = sys.n;
  const double slack = 1e-9;

  auto check_pair = [&](const Vector& x1, const Vector& x2) {
    const double dist = (x1 - x2).lpNorm<Eigen::Infinity>();
    if (dist == 0.0) return;
    const double df = (sys.drift(x1) - sys.drift(x2)).lpNorm<Eigen::Infinity>();
    if (df > sys.d_f * dist * (1.0 + slack) + 1e-12)
      throw ValidationError("declared drift Lipschitz constant is violated by sampling (ratio " +
                            std::to_string(df / dist) + " > " + std::to_string(sys.d_f) + ")");
    const double dg =
        (sys.input_map(x1) - sys.input_map(x2)).cwiseAbs().rowwise().sum().maxCoeff();
    if (dg > sys.d_g * dist * (1.0 + slack) + 1e-12)
      throw ValidationError("declared input-map Lipschitz constant is violated by sampling");
  };

  if (n <= 16) {
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
      Vector probe = x0;
      for (int i = 0; i < n; ++i)
        probe(i) += (mask >> i) & 1 ? half_width : -half_width;
      check_pair(probe, x0);
    }
  }

  std::mt19937_64 rng(kLipschitzSeed);
  std::uniform_real_distribution<double> unif(-half_width, half_width);
  for (int k = 0; k < kLipschitzSamplePairs; ++k) {
    Vector x1(n), x2(n);
    for (int i = 0; i < n; ++i) {
      x1(i) = x0(i) + unif(rng);
      x2(i) = x0(i) + unif(rng);
    }
    check_pair(x1, x2);
  }
}

Matrix parse_matrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ParseError(name + " must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError(name + " rows have inconsistent lengths");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw ParseError(name + " entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

Vector parse_vector(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw ParseError(name + " must be a non-empty array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(name + " entries must be numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

void reject_unknown_fields(const json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ParseError("unknown field \"" + item.key() + "\" in " + where);
}

}  // namespace

Model make_model(ControlSystem system, std::vector<int> uncontrolled, Vector x0,
                 Vector x_tg, double t_f, std::optional<double> radius) {
  const int n = static_cast<int>(system.B0.rows());
  const int total_inputs = static_cast<int>(system.B0.cols());
  system.n = n;

  require_finite(system.B0, "B");
  if (system.A.size() > 0) {
    require_finite(system.A, "A");
    if (system.A.rows() != n || system.A.cols() != n)
      throw ValidationError("A must be n x n");
  } else {
    system.A = Matrix::Zero(n, n);
  }
  if (!(system.d_f >= 0.0) || !(system.d_g >= 0.0))
    throw ValidationError("Lipschitz constants must be non-negative");
  if (system.kind == SystemKind::Driftless) {
    if (system.d_f != 0.0 || system.d_g != 0.0)
      throw ValidationError("a driftless system must declare zero Lipschitz constants");
    if (system.A.cwiseAbs().maxCoeff() != 0.0 || system.wind)
      throw ValidationError("a driftless system cannot carry drift terms");
  }
  if (system.wind && system.wind->family != "admire_wind")
    throw ValidationError("unknown wind family \"" + system.wind->family + "\"");
  if (system.wind && n != 3)
    throw ValidationError("the admire_wind family requires a 3-state system");

  std::set<int> seen;
  for (int idx : uncontrolled) {
    if (idx < 0 || idx >= total_inputs)
      throw ValidationError("uncontrolled index " + std::to_string(idx) + " out of range");
    if (!seen.insert(idx).second)
      throw ValidationError("duplicate uncontrolled index " + std::to_string(idx));
  }
  const int p = static_cast<int>(uncontrolled.size());
  const int m = total_inputs - p;
  if (p < 1) throw ValidationError("at least one uncontrolled input is required");
  if (m < 1) throw ValidationError("at least one controlled input is required");
  system.m = m;
  system.p = p;

  if (x0.size() != n || x_tg.size() != n)
    throw ValidationError("x0 and x_tg must have the state dimension");
  if (!x0.allFinite() || !x_tg.allFinite())
    throw ValidationError("task vectors contain non-finite entries");
  if (!(t_f > 0.0)) throw ValidationError("t_f must be positive");

  ReachTask task;
  task.x0 = x0;
  task.x_tg = x_tg;
  task.x_tilde = x0 - x_tg;
  task.t_f = t_f;
  task.radius = radius;
  if (radius) {
    if (!(*radius >= 0.0)) throw ValidationError("R must be non-negative");
    if (task.x_tilde.norm() > *radius)
      throw ValidationError("|x0 - x_tg|_2 exceeds the declared radius R");
  }

  ActuatorPartition part;
  part.x0 = x0;
  part.B = system.input_map(x0);
  part.uncontrolled = uncontrolled;
  std::sort(part.uncontrolled.begin(), part.uncontrolled.end());
  part.B_c.resize(n, m);
  part.B_uc.resize(n, p);
  int ci = 0, ui = 0;
  for (int col = 0; col < total_inputs; ++col) {
    if (seen.count(col))
      part.B_uc.col(ui++) = part.B.col(col);
    else
      part.B_c.col(ci++) = part.B.col(col);
  }
  part.f0 = system.drift(x0);

  check_full_row_rank(part.B, "B");
  check_full_row_rank(part.B_c, "B_c");

  const double half_width = std::max(1.0, 2.0 * task.x_tilde.lpNorm<Eigen::Infinity>());
  check_lipschitz(system, x0, half_width);

  return Model{std::move(system), std::move(part), std::move(task)};
}

Model parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model file must contain a JSON object");

  reject_unknown_fields(
      j, {"kind", "A", "B", "wind", "D_f", "D_g", "uncontrolled_indices", "task"}, "model");
  for (const char* key : {"kind", "B", "D_f", "D_g", "uncontrolled_indices", "task"})
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");

  ControlSystem sys;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "driftless")
    sys.kind = SystemKind::Driftless;
  else if (kind == "linear")
    sys.kind = SystemKind::LinearDrift;
  else if (kind == "nonlinear")
    sys.kind = SystemKind::GeneralNonlinear;
  else
    throw ParseError("kind must be one of driftless|linear|nonlinear");

  sys.B0 = parse_matrix(j["B"], "B");
  if (j.contains("A")) {
    if (sys.kind == SystemKind::Driftless)
      throw ParseError("a driftless model cannot carry an A matrix");
    sys.A = parse_matrix(j["A"], "A");
  } else if (sys.kind == SystemKind::LinearDrift) {
    throw ParseError("a linear model requires an A matrix");
  }

  if (j.contains("wind")) {
    if (sys.kind != SystemKind::GeneralNonlinear)
      throw ParseError("wind is only valid for nonlinear models");
    const json& w = j["wind"];
    reject_unknown_fields(w, {"family", "amplitude"}, "wind");
    if (!w.contains("family") || !w.contains("amplitude"))
      throw ParseError("wind requires family and amplitude");
    sys.wind = WindField{w["family"].get<std::string>(), w["amplitude"].get<double>()};
  }

  if (!j["D_f"].is_number() || !j["D_g"].is_number())
    throw ParseError("D_f and D_g must be numbers");
  sys.d_f = j["D_f"].get<double>();
  sys.d_g = j["D_g"].get<double>();

  std::vector<int> uncontrolled;
  if (!j["uncontrolled_indices"].is_array())
    throw ParseError("uncontrolled_indices must be an array");
  for (const auto& idx : j["uncontrolled_indices"]) {
    if (!idx.is_number_integer()) throw ParseError("uncontrolled_indices must hold integers");
    uncontrolled.push_back(idx.get<int>());
  }

  const json& t = j["task"];
  if (!t.is_object()) throw ParseError("task must be an object");
  reject_unknown_fields(t, {"x0", "x_tg", "t_f", "R"}, "task");
  for (const char* key : {"x0", "x_tg", "t_f"})
    if (!t.contains(key)) throw ParseError(std::string("task is missing \"") + key + "\"");
  const Vector x0 = parse_vector(t["x0"], "task.x0");
  const Vector x_tg = parse_vector(t["x_tg"], "task.x_tg");
  if (!t["t_f"].is_number()) throw ParseError("task.t_f must be a number");
  std::optional<double> radius;
  if (t.contains("R")) {
    if (!t["R"].is_number()) throw ParseError("task.R must be a number");
    radius = t["R"].get<double>();
  }

  return make_model(std::move(sys), std::move(uncontrolled), x0, x_tg,
                    t["t_f"].get<double>(), radius);
}

Model load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

Model underwater_robot_model() {
  ControlSystem sys;
  sys.kind = SystemKind::Driftless;
  sys.B0.resize(2, 3);
  sys.B0 << 2.0, 1.0, 1.0,
            0.2, -1.0, 1.0;
  Vector x0(2), x_tg(2);
  x0 << 1.0, 1.0;
  x_tg << 0.0, 0.0;
  return make_model(std::move(sys), {2}, x0, x_tg, 10.0, 100.0);
}

namespace {

ControlSystem admire_system() {
  ControlSystem sys;
  sys.kind = SystemKind::LinearDrift;
  sys.A.resize(3, 3);
  sys.A << -0.9967, 0.0, 0.6176,
            0.0, -0.5057, 0.0,
           -0.0939, 0.0, -0.2127;
  sys.B0.resize(3, 4);
  sys.B0 << 0.0, -4.2423, 4.2423, 1.4871,
            1.6532, -1.2735, -1.2735, 0.0024,
            0.0, -0.2805, 0.2805, -0.8823;
  sys.d_f = 1.6143;  // |A|_inf
  sys.d_g = 0.0;
  return sys;
}

}  // namespace

Model admire_model() {
  ControlSystem sys = admire_system();
  Vector x0(3), x_tg(3);
  x0 << 1.0, 1.0, 1.0;
  x_tg << 0.0, 0.0, 0.0;
  return make_model(std::move(sys), {0}, x0, x_tg, 1.0, 2.0);
}

Model admire_wind_model(double amplitude) {
  ControlSystem sys = admire_system();
  sys.kind = SystemKind::GeneralNonlinear;
  sys.wind = WindField{"admire_wind", amplitude};
  sys.d_f = 1.6143 + amplitude;
  Vector x0(3), x_tg(3);
  x0 << 1.0, 1.0, 1.0;
  x_tg << 0.0, 0.0, 0.0;
  return make_model(std::move(sys), {0}, x0, x_tg, 1.0, 2.0);
}

}  // namespace resilience
