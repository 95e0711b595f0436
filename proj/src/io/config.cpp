// Copyright 2026 The eitcool authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "io/config.hpp"

#include <cctype>
#include <climits>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eitcool::io {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& raw) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(raw, &consumed);
    if (consumed != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for key '" + key + "': '" + raw + "'");
  }
}

long long parse_integer(const std::string& key, const std::string& raw) {
  try {
    std::size_t consumed = 0;
    const long long v = std::stoll(raw, &consumed);
    if (consumed != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value for key '" + key + "': '" + raw + "'");
  }
}

std::vector<std::string> split_commas(const std::string& raw) {
  std::vector<std::string> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

const std::set<std::string>& RunConfig::known_keys() {
  static const std::set<std::string> keys = {
      // run control
      "engine", "seed", "preset",
      // drives
      "omega_g", "omega_e", "delta", "delta_g", "delta_e", "drive", "drive_ratio",
      "drive_scale",
      // qubit decoherence
      "gamma_g", "gamma_e", "gamma_eg", "gamma_phi",
      // mechanical mode 1
      "nu", "q_factor", "n_initial", "n_max", "eta_ld", "eta_g", "eta_e", "eta_3",
      "temperature_mk",
      // mechanical mode 2
      "mode2_nu", "mode2_q_factor", "mode2_n_initial", "mode2_n_max", "mode2_eta_ld",
      "mode2_eta_g", "mode2_eta_e", "mode2_eta_3",
      // time evolution and steady state
      "t_final", "n_times", "n_traj", "traj_rtol", "traj_atol", "direct_limit",
      // sweeps
      "sweep_axis", "sweep_values", "delta_g_ratio", "engines", "me_occupation_limit",
      // spectrum
      "probe_omega", "delta_g_min", "delta_g_max", "n_points",
      // circuit-level qubit
      "alpha", "e_j_ghz", "ej_over_ec", "flux_f", "flux_list", "n_cut", "check_truncation",
      "b_field_t", "length_um", "m_eff_pg",
      // convergence study
      "n_max_list",
      // analytic rates
      "include_correction", "mode",
  };
  return keys;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (known_keys().count(key) == 0) throw ConfigError("unknown config key '" + key + "'");
  kv_[key] = value;
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_double(key, it->second);
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const long long v = parse_integer(key, it->second);
  if (v < INT_MIN || v > INT_MAX)
    throw ConfigError("integer value out of range for key '" + key + "'");
  return static_cast<int>(v);
}

std::uint64_t RunConfig::get_uint64(const std::string& key, std::uint64_t fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const long long v = parse_integer(key, it->second);
  if (v < 0) throw ConfigError("key '" + key + "' requires a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean value for key '" + key + "': '" + v + "'");
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return {};
  std::vector<double> out;
  for (const auto& item : split_commas(it->second)) out.push_back(parse_double(key, item));
  return out;
}

std::vector<int> RunConfig::get_int_list(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return {};
  std::vector<int> out;
  for (const auto& item : split_commas(it->second)) {
    const long long v = parse_integer(key, item);
    if (v < INT_MIN || v > INT_MAX)
      throw ConfigError("integer value out of range for key '" + key + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string RunConfig::canonical_hash() const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a offset basis
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [key, value] : kv_) {  // std::map iterates in key order
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  RunConfig cfg;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config file '" + path + "' must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (value.is_string()) {
        cfg.set(key, value.get<std::string>());
      } else if (value.is_boolean()) {
        cfg.set(key, value.get<bool>() ? "true" : "false");
      } else if (value.is_number_integer()) {
        cfg.set(key, std::to_string(value.get<long long>()));
      } else if (value.is_number()) {
        cfg.set(key, format_sig12(value.get<double>()));
      } else {
        throw ConfigError("config key '" + key + "' has unsupported JSON type");
      }
    }
    return cfg;
  }

  std::stringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file '" + path + "' line " + std::to_string(line_no) +
                        ": expected key=value");
    cfg.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

void apply_preset(RunConfig& cfg, const std::string& preset) {
  using Entry = std::pair<const char*, const char*>;
  std::vector<Entry> values;
  if (preset == "weak") {
    // Asymmetric pump: omega_e = sqrt(nu (nu - delta)), omega_g = omega_e / 8.
    values = {{"delta", "-3"},
              {"omega_e", "0.901387818866"},
              {"omega_g", "0.112673477358"},
              {"nu", "0.25"},
              {"q_factor", "50000"},
              {"n_initial", "16"},
              {"eta_ld", "0.0566"}};
  } else if (preset == "strong") {
    // Balanced drives at the optimal total strength.
    values = {{"delta", "-3"},
              {"omega_e", "0.637377439199"},
              {"omega_g", "0.637377439199"},
              {"nu", "0.25"},
              {"q_factor", "50000"},
              {"n_initial", "16"},
              {"eta_ld", "0.0566"}};
  } else if (preset == "strong_dec") {
    values = {{"delta_g", "-2.85"},
              {"delta_e", "-3"},
              {"omega_e", "0.53"},
              {"omega_g", "0.53"},
              {"gamma_eg", "0.02"},
              {"gamma_phi", "0.04"},
              {"nu", "0.25"},
              {"q_factor", "50000"},
              {"n_initial", "16"},
              {"eta_ld", "0.0566"}};
  } else if (preset == "detuning_curve") {
    values = {{"sweep_axis", "delta_e"},
              // Wide enough to show the cooling minimum near delta_e = -24;
              // the steady state rises again once the scaled drive outgrows
              // the sideband resonance condition.
              {"sweep_values",
               "-1,-2,-3,-4,-5,-6,-7,-8,-10,-12,-14,-16,-18,-20,-22,-24,-26,"
               "-28,-30"},
              {"delta_g_ratio", "0.99"},
              {"drive_ratio", "1"},
              {"drive_scale", "0.64"},
              {"gamma_eg", "0.02"},
              {"gamma_phi", "0.04"},
              {"nu", "0.25"},
              {"q_factor", "50000"},
              {"n_initial", "16"},
              {"eta_ld", "0.0566"}};
  } else if (preset == "twomode") {
    values = {{"delta_g", "-2.86"},
              {"delta_e", "-3"},
              {"omega_e", "0.694"},
              {"omega_g", "0.694"},
              {"gamma_eg", "0.02"},
              {"gamma_phi", "0.04"},
              {"nu", "0.25"},
              {"q_factor", "50000"},
              {"n_initial", "16"},
              {"eta_ld", "0.0566"},
              {"mode2_nu", "0.5"},
              {"mode2_q_factor", "50000"},
              {"mode2_n_initial", "16"},
              {"mode2_eta_ld", "0.0566"}};
  } else {
    throw ConfigError("unknown preset '" + preset + "'");
  }
  for (const auto& [key, value] : values)
    if (!cfg.has(key)) cfg.set(key, value);
}

std::pair<std::string, std::string> split_override(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--set expects key=value, got '" + assignment + "'");
  return {assignment.substr(0, eq), assignment.substr(eq + 1)};
}

}  // namespace eitcool::io
