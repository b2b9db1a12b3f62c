#include "ek/config.hpp"

#include <fstream>
#include <sstream>

#include "ek/errors.hpp"

namespace ek {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream ss;
  ss << "line " << line << ": " << msg;
  throw Error(ErrorCategory::config_parse, ss.str());
}

double to_double(const std::string& v, int line) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters after number '" + v + "'");
    return x;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, int line) {
  const double x = to_double(v, line);
  const int i = static_cast<int>(x);
  if (x != i) fail(line, "expected an integer, got '" + v + "'");
  return i;
}

bool to_flag(const std::string& v, int line) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  fail(line, "expected on/off, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v, int line) {
  std::vector<double> out;
  std::istringstream ss(v);
  std::string tok;
  while (ss >> tok) out.push_back(to_double(tok, line));
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find_first_of("#;");
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");

    if (section.empty()) {
      if (key == "rng_seed") c.rng_seed = static_cast<std::uint64_t>(to_double(val, line));
      else fail(line, "unknown top-level key '" + key + "'");
    } else if (section == "grid") {
      if (key == "dim") c.dim = to_int(val, line);
      else if (key == "n") c.n = to_int(val, line);
      else if (key == "box_length") c.box_length = to_double(val, line);
      else fail(line, "unknown [grid] key '" + key + "'");
    } else if (section == "model") {
      if (key == "kappa_family") c.kappa_family = val;
      else if (key == "kappa0") c.kappa0 = to_double(val, line);
      else if (key == "kappa_exponent") c.kappa_exponent = to_double(val, line);
      else if (key == "pressure") c.pressure = val;
      else if (key == "pressure_p0") c.pressure_p0 = to_double(val, line);
      else if (key == "pressure_coeffs") c.pressure_coeffs = to_list(val, line);
      else if (key == "j_lo") c.j_lo = to_double(val, line);
      else if (key == "j_hi") c.j_hi = to_double(val, line);
      else if (key == "synthetic_ca") c.synthetic_ca = to_double(val, line);
      else if (key == "synthetic_cg") c.synthetic_cg = to_double(val, line);
      else fail(line, "unknown [model] key '" + key + "'");
    } else if (section == "profile") {
      if (key == "generator") {
        if (val == "gaussian_dipole") c.profile.generator = ProfileGenerator::gaussian_dipole;
        else if (val == "ring_packet") c.profile.generator = ProfileGenerator::ring_packet;
        else if (val == "user_snapshot") c.profile.generator = ProfileGenerator::user_snapshot;
        else fail(line, "unknown profile generator '" + val + "'");
      } else if (key == "amplitude") c.profile.amplitude = to_double(val, line);
      else if (key == "width") c.profile.width = to_double(val, line);
      else if (key == "window_lo") c.profile.window_lo = to_double(val, line);
      else if (key == "window_hi") c.profile.window_hi = to_double(val, line);
      else if (key == "ring_radius") c.profile.ring_radius = to_double(val, line);
      else if (key == "ring_width") c.profile.ring_width = to_double(val, line);
      else if (key == "roll_center") c.profile.roll_center = to_double(val, line);
      else if (key == "roll_width") c.profile.roll_width = to_double(val, line);
      else if (key == "snapshot") c.profile.snapshot_path = val;
      else fail(line, "unknown [profile] key '" + key + "'");
    } else if (section == "plan") {
      if (key == "T_n") {
        c.plan.T_n = to_list(val, line);
        if (c.plan.T_n.empty()) fail(line, "T_n list is empty");
      } else if (key == "s_reg") c.plan.s_reg = to_double(val, line);
      else if (key == "t_lo") c.plan.t_lo = to_double(val, line);
      else if (key == "cadence") c.plan.sample_cadence = to_double(val, line);
      else if (key == "quad_panel") c.plan.quad_panel = to_double(val, line);
      else if (key == "quad_nodes") c.plan.quad_nodes = to_int(val, line);
      else if (key == "quad_tol") c.plan.quad_tol = to_double(val, line);
      else if (key == "epsilon0_threshold") c.plan.epsilon0_threshold = to_double(val, line);
      else fail(line, "unknown [plan] key '" + key + "'");
    } else if (section == "solver") {
      if (key == "scheme") {
        if (val == "strang_split_rk4") c.solver.scheme = Scheme::strang_split_rk4;
        else if (val == "etd_rk4") c.solver.scheme = Scheme::etd_rk4;
        else if (val == "rk4_pseudospectral") c.solver.scheme = Scheme::rk4_pseudospectral;
        else fail(line, "unknown scheme '" + val + "'");
      } else if (key == "dt") c.solver.dt = to_double(val, line);
      else if (key == "dealias") c.solver.dealias = to_flag(val, line);
      else if (key == "linear_only") c.solver.linear_only = to_flag(val, line);
      else if (key == "defect_interval") c.solver.defect_check_interval = to_int(val, line);
      else if (key == "defect_tol") c.solver.defect_tol = to_double(val, line);
      else if (key == "max_rejections") c.solver.max_step_rejections = to_int(val, line);
      else fail(line, "unknown [solver] key '" + key + "'");
    } else if (section == "output") {
      if (key == "dir") c.out_dir = val;
      else if (key == "snapshot_cadence") c.field_snapshot_cadence = to_int(val, line);
      else if (key == "formats") {
        c.write_csv = val.find("csv") != std::string::npos;
        c.write_json = val.find("json") != std::string::npos;
      } else fail(line, "unknown [output] key '" + key + "'");
    } else if (section == "simulate") {
      if (key == "duration") c.duration = to_double(val, line);
      else fail(line, "unknown [simulate] key '" + key + "'");
    } else {
      fail(line, "unknown section [" + section + "]");
    }
  }
  if (c.solver.dt <= 0.0) throw Error(ErrorCategory::config_parse, "dt must be positive");
  return c;
}

Grid ExperimentConfig::make_grid() const { return Grid::cube(dim, n, box_length); }

CapillarityModel ExperimentConfig::make_model() const {
  Pressure p = pressure == "cubic" ? Pressure::cubic(pressure_p0)
                                   : Pressure::poly(pressure_p0, pressure_coeffs);
  DensityInterval J{j_lo, j_hi};
  if (kappa_family == "quantum") return CapillarityModel::quantum(kappa0, p, J);
  if (kappa_family == "constant") return CapillarityModel::constant(kappa0, p, J);
  if (kappa_family == "power") return CapillarityModel::power(kappa0, kappa_exponent, p, J);
  if (kappa_family == "synthetic") return CapillarityModel::synthetic(synthetic_ca, synthetic_cg);
  throw Error(ErrorCategory::config_parse, "unknown kappa_family '" + kappa_family + "'");
}

std::string ExperimentConfig::echo() const {
  std::ostringstream o;
  o.precision(17);
  o << "rng_seed = " << rng_seed << "\n\n[grid]\ndim = " << dim << "\nn = " << n
    << "\nbox_length = " << box_length << "\n\n[model]\nkappa_family = " << kappa_family
    << "\nkappa0 = " << kappa0 << "\nkappa_exponent = " << kappa_exponent
    << "\npressure = " << pressure << "\npressure_p0 = " << pressure_p0
    << "\npressure_coeffs =";
  for (double x : pressure_coeffs) o << " " << x;
  o << "\nj_lo = " << j_lo << "\nj_hi = " << j_hi << "\nsynthetic_ca = " << synthetic_ca
    << "\nsynthetic_cg = " << synthetic_cg << "\n\n[profile]\ngenerator = ";
  switch (profile.generator) {
    case ProfileGenerator::gaussian_dipole: o << "gaussian_dipole"; break;
    case ProfileGenerator::ring_packet: o << "ring_packet"; break;
    case ProfileGenerator::user_snapshot: o << "user_snapshot"; break;
  }
  o << "\namplitude = " << profile.amplitude << "\nwidth = " << profile.width
    << "\nwindow_lo = " << profile.window_lo << "\nwindow_hi = " << profile.window_hi
    << "\nring_radius = " << profile.ring_radius << "\nring_width = " << profile.ring_width
    << "\nroll_center = " << profile.roll_center << "\nroll_width = " << profile.roll_width
    << "\nsnapshot = " << profile.snapshot_path << "\n\n[plan]\nT_n =";
  for (double t : plan.T_n) o << " " << t;
  o << "\ns_reg = " << plan.s_reg << "\nt_lo = " << plan.t_lo
    << "\ncadence = " << plan.sample_cadence << "\nquad_panel = " << plan.quad_panel
    << "\nquad_nodes = " << plan.quad_nodes << "\nquad_tol = " << plan.quad_tol
    << "\nepsilon0_threshold = " << plan.epsilon0_threshold << "\n\n[solver]\nscheme = ";
  switch (solver.scheme) {
    case Scheme::strang_split_rk4: o << "strang_split_rk4"; break;
    case Scheme::etd_rk4: o << "etd_rk4"; break;
    case Scheme::rk4_pseudospectral: o << "rk4_pseudospectral"; break;
  }
  o << "\ndt = " << solver.dt << "\ndealias = " << (solver.dealias ? "on" : "off")
    << "\nlinear_only = " << (solver.linear_only ? "on" : "off")
    << "\ndefect_interval = " << solver.defect_check_interval
    << "\ndefect_tol = " << solver.defect_tol
    << "\nmax_rejections = " << solver.max_step_rejections << "\n\n[output]\ndir = " << out_dir
    << "\nsnapshot_cadence = " << field_snapshot_cadence << "\nformats =";
  if (write_csv) o << " csv";
  if (write_json) o << " json";
  o << "\n\n[simulate]\nduration = " << duration << "\n";
  return o.str();
}

}  // namespace ek
