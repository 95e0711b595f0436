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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "io/emit.hpp"
#include "io/runner.hpp"

using namespace eitcool;
using io::RunConfig;

namespace {

std::string write_temp(const std::string& name, const std::string& contents) {
  const std::string path = "/tmp/eitcool_test_" + name;
  std::ofstream out(path);
  out << contents;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Wall-clock metadata is the one legitimately run-dependent field.
std::string strip_wall_time(const std::string& text) {
  std::stringstream in(text), out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("wall_time_s") == std::string::npos) out << line << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("unknown configuration keys are rejected by name") {
  RunConfig cfg;
  try {
    cfg.set("omega_q", "1.0");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("omega_q") != std::string::npos);
  }
  CHECK_NOTHROW(cfg.set("omega_g", "1.0"));
}

TEST_CASE("json and ini configuration files load identically") {
  const std::string json_path = write_temp(
      "cfg.json", R"({"delta": -3, "omega_e": 0.9, "n_initial": 16, "preset": "weak"})");
  const std::string ini_path = write_temp("cfg.ini",
                                          "# comment line\n"
                                          "delta = -3\n"
                                          "omega_e = 0.9\n"
                                          "n_initial = 16\n"
                                          "preset = weak\n");
  const RunConfig a = io::load_config_file(json_path);
  const RunConfig b = io::load_config_file(ini_path);
  CHECK(a.entries() == b.entries());
  CHECK(a.canonical_hash() == b.canonical_hash());
  CHECK(a.get_double("delta", 0.0) == -3.0);
  CHECK(a.get_int("n_initial", 0) == 16);

  try {
    io::load_config_file("/tmp/eitcool_missing_config.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("/tmp/eitcool_missing_config.json") != std::string::npos);
  }
}

TEST_CASE("canonical hash depends on content and not insertion order") {
  RunConfig a;
  a.set("delta", "-3");
  a.set("omega_e", "0.9");
  RunConfig b;
  b.set("omega_e", "0.9");
  b.set("delta", "-3");
  CHECK(a.canonical_hash() == b.canonical_hash());
  CHECK(a.canonical_hash().size() == 16);

  RunConfig c = a;
  c.set("omega_e", "0.91");
  CHECK(c.canonical_hash() != a.canonical_hash());
}

TEST_CASE("command-line overrides split on the first equals sign") {
  const auto [key, value] = io::split_override("omega_e=0.9");
  CHECK(key == "omega_e");
  CHECK(value == "0.9");
  const auto [k2, v2] = io::split_override("sweep_values=-1,-2,-3");
  CHECK(k2 == "sweep_values");
  CHECK(v2 == "-1,-2,-3");
  CHECK_THROWS_AS(io::split_override("omega_e"), ConfigError);
  CHECK_THROWS_AS(io::split_override("=0.9"), ConfigError);
}

TEST_CASE("presets fill defaults without overriding explicit settings") {
  RunConfig cfg;
  cfg.set("omega_e", "0.8");  // explicit user choice
  io::apply_preset(cfg, "weak");
  CHECK(cfg.get_double("omega_e", 0.0) == 0.8);
  CHECK(cfg.get_double("omega_g", 0.0) == 0.112673477358);
  CHECK(cfg.get_double("delta", 0.0) == -3.0);
  CHECK(cfg.get_double("eta_ld", 0.0) == 0.0566);

  RunConfig strong;
  io::apply_preset(strong, "strong");
  CHECK(strong.get_double("omega_g", 0.0) == 0.637377439199);
  CHECK(strong.get_double("omega_e", 0.0) == 0.637377439199);

  RunConfig dec;
  io::apply_preset(dec, "strong_dec");
  CHECK(dec.get_double("delta_g", 0.0) == -2.85);
  CHECK(dec.get_double("delta_e", 0.0) == -3.0);
  CHECK(dec.get_double("omega_g", 0.0) == 0.53);
  CHECK(dec.get_double("gamma_eg", 0.0) == 0.02);
  CHECK(dec.get_double("gamma_phi", 0.0) == 0.04);

  RunConfig curve;
  io::apply_preset(curve, "detuning_curve");
  CHECK(curve.get_string("sweep_axis", "") == "delta_e");
  CHECK(curve.get_double_list("sweep_values").size() == 19);
  CHECK(curve.get_double_list("sweep_values").front() == -1.0);
  CHECK(curve.get_double_list("sweep_values").back() == -30.0);
  CHECK(curve.get_double("drive_scale", 0.0) == 0.64);

  RunConfig two;
  io::apply_preset(two, "twomode");
  CHECK(two.get_double("mode2_nu", 0.0) == 0.5);
  CHECK(two.get_double("omega_g", 0.0) == 0.694);

  RunConfig bad;
  CHECK_THROWS_AS(io::apply_preset(bad, "weakest"), ConfigError);
}

TEST_CASE("model assembly maps configuration keys onto the spec") {
  RunConfig cfg;
  cfg.set("preset", "strong_dec");
  cfg.set("n_max", "40");
  const auto spec = io::model_from_config(cfg);
  CHECK(spec.drive.delta_g == -2.85);
  CHECK(spec.drive.delta_e == -3.0);
  CHECK(spec.drive.omega_g == 0.53);
  CHECK(spec.decoherence.big_gamma == 0.02);
  CHECK(spec.decoherence.gamma_phi == 0.04);
  REQUIRE(spec.modes.size() == 1);
  CHECK(spec.modes[0].nu == 0.25);
  CHECK(spec.modes[0].n_initial == 16.0);
  CHECK(spec.modes[0].n_max == 40);
  // eta_ld is split using the fixed working-point ratios.
  const double denom = lindblad::kEtaRatioG - lindblad::kEtaRatioE;
  CHECK(spec.modes[0].eta_g ==
        doctest::Approx(0.0566 * lindblad::kEtaRatioG / denom).epsilon(1e-14));
  CHECK(spec.modes[0].eta_ld() == doctest::Approx(0.0566).epsilon(1e-12));

  RunConfig two;
  two.set("preset", "twomode");
  const auto pair = io::model_from_config(two);
  REQUIRE(pair.modes.size() == 2);
  CHECK(pair.modes[0].nu == 0.25);
  CHECK(pair.modes[1].nu == 0.5);
  CHECK(pair.modes[1].n_initial == 16.0);

  // Shared detuning key fans out to both transitions.
  RunConfig shared;
  shared.set("delta", "-2.5");
  const auto locked = io::model_from_config(shared);
  CHECK(locked.drive.delta_g == -2.5);
  CHECK(locked.drive.delta_e == -2.5);

  // Explicit couplings override the scale-based split.
  RunConfig explicit_eta;
  explicit_eta.set("eta_g", "0.05");
  explicit_eta.set("eta_e", "-0.001");
  explicit_eta.set("eta_3", "0.0");
  const auto custom = io::model_from_config(explicit_eta);
  CHECK(custom.modes[0].eta_g == 0.05);
  CHECK(custom.modes[0].eta_e == -0.001);
  CHECK(custom.modes[0].eta_3 == 0.0);
}

TEST_CASE("bath temperature converts to the bose occupation of the mode") {
  RunConfig cfg;
  cfg.set("nu", "0.25");
  cfg.set("temperature_mk", "20");
  const auto spec = io::model_from_config(cfg);
  // 2 pi x 25 MHz corresponds to about 1.2 mK, so 20 mK sits near n = 16.2.
  CHECK(spec.modes[0].n_initial > 16.0);
  CHECK(spec.modes[0].n_initial < 16.4);

  RunConfig conflict;
  conflict.set("n_initial", "16");
  conflict.set("temperature_mk", "20");
  CHECK_THROWS_AS(io::model_from_config(conflict), ConfigError);

  RunConfig frozen;
  frozen.set("temperature_mk", "0");
  const auto cold = io::model_from_config(frozen);
  CHECK(cold.modes[0].n_initial == 0.0);
}

TEST_CASE("csv cells refuse non-finite values and format stably") {
  io::CsvTable table({"x", "label", "y"});
  table.add_row({1.0, "row", 0.25});
  table.add_row({-3.5e-7, "neg", 2.0 / 3.0});
  CHECK(table.row_count() == 2);
  const std::string text = table.serialize();
  CHECK(text.find("x,label,y\n") == 0);
  CHECK(text.find("row") != std::string::npos);
  // 12 significant digits, locale-independent.
  CHECK(text.find("0.666666666667") != std::string::npos);

  CHECK_THROWS_AS(table.add_row({std::nan(""), "bad", 1.0}),
                  NumericalError);
  CHECK_THROWS_AS(table.add_row({std::numeric_limits<double>::infinity(), "bad", 1.0}),
                  NumericalError);
}

TEST_CASE("identical configurations produce byte-identical outputs") {
  RunConfig cfg;
  cfg.set("preset", "strong");
  cfg.set("n_initial", "1,");
  // trailing comma is not a valid number
  CHECK_THROWS_AS(cfg.get_double("n_initial", 0.0), ConfigError);

  RunConfig run;
  run.set("preset", "strong");
  run.set("n_initial", "4");

  const std::string dir_a = "/tmp/eitcool_out_a";
  const std::string dir_b = "/tmp/eitcool_out_b";
  const auto res_a = io::run_subcommand("rates", run, dir_a);
  const auto res_b = io::run_subcommand("rates", run, dir_b);
  REQUIRE_FALSE(res_a.files_written.empty());
  REQUIRE(res_a.files_written.size() == res_b.files_written.size());

  CHECK(res_a.summary_json.find("n_ss") != std::string::npos);
  CHECK(strip_wall_time(res_a.summary_json) == strip_wall_time(res_b.summary_json));

  for (std::size_t i = 0; i < res_a.files_written.size(); ++i) {
    const std::string& path_a = res_a.files_written[i];
    const std::string& path_b = res_b.files_written[i];
    // Same hash-derived file name under each output directory.
    CHECK(path_a.substr(path_a.rfind('/')) == path_b.substr(path_b.rfind('/')));
    const std::string bytes_a = slurp(path_a);
    const std::string bytes_b = slurp(path_b);
    CHECK_FALSE(bytes_a.empty());
    if (path_a.size() >= 4 && path_a.substr(path_a.size() - 4) == ".csv") {
      CHECK(bytes_a == bytes_b);  // data output reruns byte for byte
    } else {
      CHECK(strip_wall_time(bytes_a) == strip_wall_time(bytes_b));
    }
  }

  // The output names carry the configuration hash.
  CHECK(res_a.files_written[0].find(run.canonical_hash()) != std::string::npos);
}
