#include "ek/report.hpp"

#include <cstdio>
#include <fstream>

#include "ek/errors.hpp"
#include "ek/version.hpp"

namespace ek {

std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

json report_header(const ExperimentConfig& cfg, const std::string& command) {
  json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["rng_seed"] = cfg.rng_seed;
  j["effective_config"] = cfg.echo();
  return j;
}

json series_to_json(const DecaySeries& s) {
  json j;
  j["t"] = s.t;
  j["value"] = s.value;
  j["fit_window"] = {s.window_lo, s.window_hi};
  j["wrap_horizon"] = s.wrap_horizon;
  j["slope"] = s.fit.slope;
  j["intercept"] = s.fit.intercept;
  j["residual"] = s.fit.residual;
  j["fit_samples"] = s.fit.samples;
  return j;
}

json norms_to_json(const ProfileNormReport& r) {
  json j;
  j["H_high"] = r.h_high;
  j["Hdot_minus2"] = r.hdot_m2;
  j["B1_11"] = r.b111;
  j["x2_H1"] = r.x2_h1;
  j["epsilon0"] = r.epsilon0;
  j["bandwidth"] = r.bandwidth;
  j["wrap_horizon"] = r.wrap_horizon;
  j["boundary_tail"] = r.boundary_tail;
  j["mean_zero"] = r.mean_zero;
  j["interior_support"] = r.interior_support;
  j["admissible"] = r.admissible;
  return j;
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::io, "cannot open " + path);
  out << j.dump(2) << "\n";
}

void write_series_csv(const std::string& path, const DecaySeries& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::io, "cannot open " + path);
  out << "t,value\n";
  for (size_t i = 0; i < s.t.size(); ++i)
    out << csv_num(s.t[i]) << ',' << csv_num(s.value[i]) << '\n';
}

void write_monitor_csv(const std::string& path, const std::vector<MonitorRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::io, "cannot open " + path);
  out << "t,mass,hamiltonian,ell_sup,divu_sup\n";
  for (const auto& r : rows)
    out << csv_num(r.t) << ',' << csv_num(r.mass) << ',' << csv_num(r.hamiltonian) << ','
        << csv_num(r.ell_sup) << ',' << csv_num(r.divu_sup) << '\n';
}

}  // namespace ek
