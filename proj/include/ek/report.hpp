#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ek/config.hpp"
#include "ek/scattering.hpp"

namespace ek {

using json = nlohmann::json;

/// Report skeleton carrying the version string and effective configuration.
json report_header(const ExperimentConfig& cfg, const std::string& command);

json series_to_json(const DecaySeries& s);
json norms_to_json(const ProfileNormReport& r);

void write_json_file(const json& j, const std::string& path);
void write_series_csv(const std::string& path, const DecaySeries& s);
void write_monitor_csv(const std::string& path, const std::vector<MonitorRow>& rows);

/// Deterministic number formatting shared by every CSV writer.
std::string csv_num(double x);

}  // namespace ek
