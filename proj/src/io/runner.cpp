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

#include "io/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "experiments/experiments.hpp"
#include "fluxqubit/fluxqubit.hpp"
#include "io/emit.hpp"
#include "rates/rates.hpp"

namespace eitcool::io {

namespace {

using nlohmann::ordered_json;

experiments::Engine parse_engine(const std::string& name) {
  if (name == "analytic") return experiments::Engine::kAnalytic;
  if (name == "me") return experiments::Engine::kMasterEquation;
  if (name == "traj") return experiments::Engine::kTrajectory;
  throw ConfigError("unknown engine '" + name + "' (expected analytic, me or traj)");
}

std::vector<double> time_grid(const RunConfig& cfg, double default_t_final,
                              int default_n_times) {
  const double t_final = cfg.get_double("t_final", default_t_final);
  const int n_times = cfg.get_int("n_times", default_n_times);
  if (t_final <= 0.0) throw ConfigError("t_final must be positive");
  if (n_times < 2) throw ConfigError("n_times must be >= 2");
  std::vector<double> times(n_times);
  for (int i = 0; i < n_times; ++i)
    times[i] = t_final * static_cast<double>(i) / (n_times - 1);
  return times;
}

void configure_mode(const RunConfig& cfg, const std::string& prefix,
                    lindblad::ResonatorParams& mode) {
  mode.nu = cfg.get_double(prefix + "nu", mode.nu);
  mode.q_factor = cfg.get_double(prefix + "q_factor", mode.q_factor);
  mode.n_initial = cfg.get_double(prefix + "n_initial", mode.n_initial);
  mode.n_max = cfg.get_int(prefix + "n_max", mode.n_max);
  const bool any_eta = cfg.has(prefix + "eta_g") || cfg.has(prefix + "eta_e") ||
                       cfg.has(prefix + "eta_3");
  if (cfg.has(prefix + "eta_ld")) {
    mode.set_etas_from_eta_ld(cfg.get_double(prefix + "eta_ld", 0.0));
  } else if (!any_eta) {
    mode.set_etas_from_eta_ld(0.0566);
  }
  mode.eta_g = cfg.get_double(prefix + "eta_g", mode.eta_g);
  mode.eta_e = cfg.get_double(prefix + "eta_e", mode.eta_e);
  mode.eta_3 = cfg.get_double(prefix + "eta_3", mode.eta_3);
}

RunConfig expanded(const RunConfig& raw) {
  RunConfig cfg = raw;
  if (cfg.has("preset")) apply_preset(cfg, cfg.get_string("preset", ""));
  return cfg;
}

struct HandlerOutput {
  CsvTable csv;
  ordered_json result;
};

HandlerOutput handle_qubit(const RunConfig& cfg) {
  fluxqubit::JunctionParams jp;
  jp.alpha = cfg.get_double("alpha", jp.alpha);
  jp.e_j_ghz = cfg.get_double("e_j_ghz", jp.e_j_ghz);
  jp.ej_over_ec = cfg.get_double("ej_over_ec", jp.ej_over_ec);
  jp.f = cfg.get_double("flux_f", jp.f);
  const int n_cut = cfg.get_int("n_cut", 10);

  std::vector<double> fluxes = cfg.get_double_list("flux_list");
  if (fluxes.empty()) fluxes.push_back(jp.f);

  CsvTable csv({"flux_f", "omega_eg_ghz", "omega_ag_ghz", "omega_ae_ghz", "s_ag", "s_ae", "s_eg",
                "c_ag", "c_ae", "c_eg"});
  for (double f : fluxes) {
    fluxqubit::JunctionParams point = jp;
    point.f = f;
    const auto lv = fluxqubit::solve_levels(fluxqubit::build_hamiltonian(point, n_cut));
    csv.add_row({lv.f, lv.omega_eg_ghz, lv.omega_ag_ghz, lv.omega_ae_ghz, lv.s_ag, lv.s_ae,
                 lv.s_eg, lv.c_ag, lv.c_ae, lv.c_eg});
  }

  const auto levels = fluxqubit::solve_levels(fluxqubit::build_hamiltonian(jp, n_cut));
  const double nu_si = cfg.get_double("nu", 0.25) * kGammaSI;
  const auto coupling = fluxqubit::coupling_parameters(
      levels, cfg.get_double("b_field_t", 3.0), cfg.get_double("length_um", 25.0) * 1e-6,
      cfg.get_double("m_eff_pg", 2.0) * 1e-15, nu_si);

  ordered_json result;
  result["n_cut"] = n_cut;
  result["levels"] = {{"flux_f", levels.f},
                      {"omega_eg_ghz", levels.omega_eg_ghz},
                      {"omega_ag_ghz", levels.omega_ag_ghz},
                      {"omega_ae_ghz", levels.omega_ae_ghz},
                      {"gap_identity_defect_ghz", levels.gap_identity_defect}};
  result["matrix_elements"] = {{"s_ag", levels.s_ag}, {"s_ae", levels.s_ae},
                               {"s_eg", levels.s_eg}, {"c_ag", levels.c_ag},
                               {"c_ae", levels.c_ae}, {"c_eg", levels.c_eg}};
  result["coupling"] = {{"x0_m", coupling.x0_m},
                        {"flux_scale", coupling.flux_scale},
                        {"eta_g", coupling.eta_g},
                        {"eta_e", coupling.eta_e},
                        {"eta_3", coupling.eta_3},
                        {"eta_ld", coupling.eta_ld}};
  if (cfg.get_bool("check_truncation", false)) {
    const double shift = fluxqubit::truncation_shift(jp, n_cut);
    result["truncation"] = {{"relative_shift", shift}, {"converged", shift < 1e-6}};
  }
  return {std::move(csv), std::move(result)};
}

HandlerOutput handle_spectrum(const RunConfig& cfg) {
  lindblad::DriveParams drive;
  drive.delta_e = cfg.get_double("delta_e", cfg.get_double("delta", -3.0));
  drive.omega_e = cfg.get_double("omega_e", 0.9);
  lindblad::DecoherenceParams dec;
  dec.gamma_g = cfg.get_double("gamma_g", 0.5);
  dec.gamma_e = cfg.get_double("gamma_e", 0.5);
  dec.big_gamma = cfg.get_double("gamma_eg", 0.0);
  dec.gamma_phi = cfg.get_double("gamma_phi", 0.0);

  const double lo = cfg.get_double("delta_g_min", drive.delta_e - 3.0);
  const double hi = cfg.get_double("delta_g_max", drive.delta_e + 3.0);
  const int n_points = cfg.get_int("n_points", 241);
  if (n_points < 2 || hi <= lo) throw ConfigError("spectrum requires delta_g_max > delta_g_min and n_points >= 2");
  std::vector<double> grid(n_points);
  for (int i = 0; i < n_points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (n_points - 1);

  const double probe = cfg.get_double("probe_omega", 0.05);
  const auto points = rates::absorption_spectrum(drive, dec, grid, probe);

  CsvTable csv({"delta_g", "pop_a", "absorption"});
  double min_abs = points.front().absorption, max_abs = min_abs;
  double argmin = points.front().delta_g;
  for (const auto& pt : points) {
    csv.add_row({pt.delta_g, pt.pop_a, pt.absorption});
    if (pt.absorption < min_abs) {
      min_abs = pt.absorption;
      argmin = pt.delta_g;
    }
    max_abs = std::max(max_abs, pt.absorption);
  }

  ordered_json result;
  result["probe_omega"] = probe;
  result["n_points"] = n_points;
  result["min_absorption"] = min_abs;
  result["argmin_delta_g"] = argmin;
  result["max_absorption"] = max_abs;
  return {std::move(csv), std::move(result)};
}

HandlerOutput handle_rates(const RunConfig& cfg) {
  const lindblad::ModelSpec spec = model_from_config(cfg);
  const int mode = cfg.get_int("mode", 0);
  const bool correction = cfg.get_bool("include_correction", true);
  const auto est = rates::steady_phonon(spec, mode, correction);
  const auto& rr = est.rates;

  const char* regime = est.regime == rates::Regime::kWeakPump    ? "weak_pump"
                       : est.regime == rates::Regime::kBalanced ? "balanced"
                                                                : "outside";

  CsvTable csv({"a_plus", "a_minus", "w", "delta_a_plus", "nu_over_q", "total_rate", "n_ss",
                "n_ss_asymptotic", "regime", "cooling", "detunings_locked"});
  csv.add_row({rr.a_plus, rr.a_minus, rr.w, rr.delta_a_plus, rr.nu_over_q, rr.total_rate,
               rr.n_ss, std::isfinite(est.n_ss_asymptotic) ? Cell(est.n_ss_asymptotic) : Cell(),
               regime, rr.cooling ? 1 : 0, rr.detunings_locked ? 1 : 0});

  ordered_json result;
  result["a_plus"] = rr.a_plus;
  result["a_minus"] = rr.a_minus;
  result["w"] = rr.w;
  result["delta_a_plus"] = rr.delta_a_plus;
  result["nu_over_q"] = rr.nu_over_q;
  result["total_rate"] = rr.total_rate;
  result["n_ss"] = rr.n_ss;
  result["regime"] = regime;
  result["cooling"] = rr.cooling;
  result["detunings_locked"] = rr.detunings_locked;
  if (std::isfinite(est.n_ss_asymptotic)) result["n_ss_asymptotic"] = est.n_ss_asymptotic;
  const double opt_sq = spec.modes[mode].nu * (spec.modes[mode].nu - spec.drive.delta_e);
  if (opt_sq > 0.0) result["omega_optimal_total"] = std::sqrt(opt_sq);
  return {std::move(csv), std::move(result)};
}

std::vector<std::string> trace_header(const lindblad::ModelSpec& spec, bool with_stderr,
                                      bool with_pops, bool with_trace_defect) {
  std::vector<std::string> header{"time"};
  for (std::size_t k = 0; k < spec.modes.size(); ++k) {
    header.push_back("mean_n" + std::to_string(k + 1));
    if (with_stderr) header.push_back("mean_n" + std::to_string(k + 1) + "_stderr");
  }
  if (with_pops) {
    header.push_back("pop_g");
    header.push_back("pop_e");
    header.push_back("pop_a");
  }
  if (with_trace_defect) header.push_back("trace_defect");
  return header;
}

void fill_trace_rows(CsvTable& csv, const lindblad::CoolingTrace& trace, bool with_stderr,
                     bool with_pops, bool with_trace_defect) {
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    std::vector<Cell> row{trace.times[i]};
    for (std::size_t k = 0; k < trace.mean_n[i].size(); ++k) {
      row.push_back(trace.mean_n[i][k]);
      if (with_stderr) row.push_back(trace.mean_n_stderr[i][k]);
    }
    if (with_pops) {
      row.push_back(trace.pop_g[i]);
      row.push_back(trace.pop_e[i]);
      row.push_back(trace.pop_a[i]);
    }
    if (with_trace_defect) row.push_back(trace.trace_defect[i]);
    csv.add_row(std::move(row));
  }
}

HandlerOutput handle_cool(const RunConfig& cfg) {
  const lindblad::ModelSpec spec = model_from_config(cfg);
  const auto engine = parse_engine(cfg.get_string("engine", "me"));
  const std::vector<double> times = time_grid(cfg, 2000.0, 101);

  ordered_json result;
  result["engine"] = experiments::engine_name(engine);

  if (engine == experiments::Engine::kAnalytic) {
    CsvTable csv(trace_header(spec, false, false, false));
    std::vector<std::vector<double>> series;
    for (int k = 0; k < static_cast<int>(spec.modes.size()); ++k)
      series.push_back(rates::rate_evolve(spec, times, k));
    for (std::size_t i = 0; i < times.size(); ++i) {
      std::vector<Cell> row{times[i]};
      for (const auto& s : series) row.push_back(s[i]);
      csv.add_row(std::move(row));
    }
    ordered_json finals = ordered_json::array();
    for (const auto& s : series) finals.push_back(s.back());
    result["final_mean_n"] = finals;
    return {std::move(csv), std::move(result)};
  }

  if (engine == experiments::Engine::kMasterEquation) {
    if (spec.superop_dim() > 2'000'000)
      throw ConfigError("model too large for a direct master-equation run; use engine=traj");
    const auto trace = lindblad::evolve(spec, times);
    CsvTable csv(trace_header(spec, false, true, true));
    fill_trace_rows(csv, trace, false, true, true);
    ordered_json finals = ordered_json::array();
    for (double v : trace.mean_n.back()) finals.push_back(v);
    result["final_mean_n"] = finals;
    result["final_trace_defect"] = trace.trace_defect.back();
    return {std::move(csv), std::move(result)};
  }

  lindblad::TrajectoryOptions topts;
  topts.n_trajectories = cfg.get_int("n_traj", 500);
  topts.seed = cfg.get_uint64("seed", topts.seed);
  topts.integrator.rtol = cfg.get_double("traj_rtol", topts.integrator.rtol);
  topts.integrator.atol = cfg.get_double("traj_atol", topts.integrator.atol);
  const auto trace = lindblad::trajectory_evolve(spec, times, topts);
  CsvTable csv(trace_header(spec, true, true, false));
  fill_trace_rows(csv, trace, true, true, false);
  ordered_json finals = ordered_json::array(), errs = ordered_json::array();
  for (double v : trace.mean_n.back()) finals.push_back(v);
  for (double v : trace.mean_n_stderr.back()) errs.push_back(v);
  result["final_mean_n"] = finals;
  result["final_mean_n_stderr"] = errs;
  result["n_trajectories"] = topts.n_trajectories;
  result["seed"] = topts.seed;
  return {std::move(csv), std::move(result)};
}

HandlerOutput handle_steady(const RunConfig& cfg) {
  const lindblad::ModelSpec spec = model_from_config(cfg);
  lindblad::SteadyOptions sopts;
  sopts.direct_solver_limit = cfg.get_int("direct_limit", sopts.direct_solver_limit);
  const auto ss = lindblad::steady_state(spec, sopts);
  const auto marginals = lindblad::mode_marginals(spec, ss.rho.vec);

  std::vector<std::string> header{"n"};
  for (std::size_t k = 0; k < marginals.size(); ++k)
    header.push_back("p_mode" + std::to_string(k + 1));
  CsvTable csv(header);
  Eigen::Index longest = 0;
  for (const auto& m : marginals) longest = std::max(longest, m.size());
  for (Eigen::Index n = 0; n < longest; ++n) {
    std::vector<Cell> row{static_cast<double>(n)};
    for (const auto& m : marginals) row.push_back(n < m.size() ? Cell(m[n]) : Cell());
    csv.add_row(std::move(row));
  }

  ordered_json result;
  ordered_json n_ss = ordered_json::array();
  for (double v : ss.obs.mean_n) n_ss.push_back(v);
  result["n_ss"] = n_ss;
  result["pop_g"] = ss.obs.pop_g;
  result["pop_e"] = ss.obs.pop_e;
  result["pop_a"] = ss.obs.pop_a;
  result["residual_inf"] = ss.residual_inf;
  result["method"] = ss.method;
  result["trace_defect"] = ss.rho.trace_defect();
  if (ss.rho.dim <= 512) result["min_eigenvalue"] = ss.rho.min_eigenvalue();
  return {std::move(csv), std::move(result)};
}

HandlerOutput handle_sweep(const RunConfig& cfg) {
  experiments::SweepSpec sweep;
  sweep.base = model_from_config(cfg);
  sweep.values = cfg.get_double_list("sweep_values");
  if (sweep.values.empty()) throw ConfigError("sweep requires sweep_values");
  const std::string axis = cfg.get_string("sweep_axis", "");
  if (axis != "n_initial" && axis != "delta_e")
    throw ConfigError("sweep_axis must be 'n_initial' or 'delta_e'");

  if (cfg.has("engines")) {
    sweep.engines.clear();
    std::stringstream ss(cfg.get_string("engines", ""));
    std::string item;
    while (std::getline(ss, item, ',')) sweep.engines.push_back(parse_engine(item));
  }
  sweep.drive_scale = cfg.get_double("drive_scale", 1.0);
  sweep.drive_ratio = cfg.get_double("drive_ratio", 1.0);
  sweep.delta_g_ratio = cfg.get_double("delta_g_ratio", 1.0);
  sweep.me_occupation_limit = cfg.get_double("me_occupation_limit", 20.0);

  const auto report = axis == "n_initial" ? experiments::sweep_initial_occupation(sweep)
                                          : experiments::sweep_detuning(sweep);

  CsvTable csv({report.axis_name, "n_ss_rate", "n_ss_asymptotic", "n_ss_me", "w", "total_rate",
                "me_method", "me_skipped"});
  for (const auto& row : report.rows) {
    csv.add_row({row.axis,
                 std::isfinite(row.n_ss_rate) ? Cell(row.n_ss_rate) : Cell(),
                 std::isfinite(row.n_ss_asymptotic) ? Cell(row.n_ss_asymptotic) : Cell(),
                 std::isfinite(row.n_ss_me) ? Cell(row.n_ss_me) : Cell(),
                 std::isfinite(row.w) ? Cell(row.w) : Cell(),
                 std::isfinite(row.total_rate) ? Cell(row.total_rate) : Cell(),
                 row.me_method, row.me_skipped ? 1 : 0});
  }

  ordered_json result;
  result["axis"] = report.axis_name;
  result["n_rows"] = report.rows.size();
  return {std::move(csv), std::move(result)};
}

HandlerOutput handle_twomode(const RunConfig& cfg) {
  const lindblad::ModelSpec spec = model_from_config(cfg);
  if (spec.modes.size() != 2)
    throw ConfigError("twomode requires mode2_* keys or preset=twomode");

  experiments::TwoModeOptions opts;
  opts.engine = parse_engine(cfg.get_string("engine", "traj"));
  opts.times = time_grid(cfg, 2000.0, 81);
  opts.trajectory.n_trajectories = cfg.get_int("n_traj", 500);
  opts.trajectory.seed = cfg.get_uint64("seed", opts.trajectory.seed);
  opts.trajectory.integrator.rtol = cfg.get_double("traj_rtol", opts.trajectory.integrator.rtol);
  opts.trajectory.integrator.atol = cfg.get_double("traj_atol", opts.trajectory.integrator.atol);

  const auto res = experiments::two_mode_experiment(spec, opts);

  ordered_json result;
  result["engine_used"] = experiments::engine_name(res.engine_used);
  result["me_refused"] = res.me_refused;
  ordered_json modes = ordered_json::array();
  for (const auto& rr : res.per_mode) {
    modes.push_back({{"a_plus", rr.a_plus},
                     {"a_minus", rr.a_minus},
                     {"w", rr.w},
                     {"total_rate", rr.total_rate},
                     {"n_ss", rr.n_ss},
                     {"cooling", rr.cooling},
                     {"detunings_locked", rr.detunings_locked}});
  }
  result["rate_model"] = modes;

  const bool traj = res.engine_used == experiments::Engine::kTrajectory;
  CsvTable csv(trace_header(spec, traj, res.trace.has_value(), false));
  if (res.trace.has_value()) {
    fill_trace_rows(csv, *res.trace, traj, true, false);
    ordered_json finals = ordered_json::array();
    for (double v : res.trace->mean_n.back()) finals.push_back(v);
    result["final_mean_n"] = finals;
    if (traj) {
      ordered_json errs = ordered_json::array();
      for (double v : res.trace->mean_n_stderr.back()) errs.push_back(v);
      result["final_mean_n_stderr"] = errs;
      result["n_trajectories"] = res.trace->n_trajectories;
    }
    // Reduction is measured against the simulated initial ensemble mean,
    // which sits slightly below N_i once the thermal tail is truncated.
    ordered_json reductions = ordered_json::array();
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
      const double n0 = res.trace->mean_n.front()[k];
      reductions.push_back(n0 > 0.0 ? 1.0 - res.trace->mean_n.back()[k] / n0 : 0.0);
    }
    result["reduction"] = reductions;
  }
  return {std::move(csv), std::move(result)};
}

HandlerOutput handle_converge(const RunConfig& cfg) {
  const lindblad::ModelSpec spec = model_from_config(cfg);
  const std::vector<int> n_max_values = cfg.get_int_list("n_max_list");
  if (n_max_values.empty()) throw ConfigError("converge requires n_max_list");

  const auto study = experiments::convergence_study(spec, n_max_values);

  CsvTable csv({"n_max", "n_ss", "method"});
  for (const auto& pt : study.points)
    csv.add_row({static_cast<double>(pt.n_max), pt.n_ss, pt.method});

  ordered_json result;
  result["last_rel_change"] = study.last_rel_change;
  if (std::isfinite(study.extrapolated)) result["extrapolated_n_ss"] = study.extrapolated;
  result["n_points"] = study.points.size();
  return {std::move(csv), std::move(result)};
}

}  // namespace

lindblad::ModelSpec model_from_config(const RunConfig& raw) {
  const RunConfig cfg = expanded(raw);
  lindblad::ModelSpec spec;

  const double delta = cfg.get_double("delta", 0.0);
  spec.drive.delta_g = cfg.get_double("delta_g", delta);
  spec.drive.delta_e = cfg.get_double("delta_e", delta);

  spec.decoherence.gamma_g = cfg.get_double("gamma_g", 0.5);
  spec.decoherence.gamma_e = cfg.get_double("gamma_e", 0.5);
  spec.decoherence.big_gamma = cfg.get_double("gamma_eg", 0.0);
  spec.decoherence.gamma_phi = cfg.get_double("gamma_phi", 0.0);

  lindblad::ResonatorParams mode1;
  if (cfg.has("temperature_mk")) {
    if (cfg.has("n_initial"))
      throw ConfigError("set either n_initial or temperature_mk, not both");
    const double t_mk = cfg.get_double("temperature_mk", 0.0);
    if (t_mk < 0.0) throw ConfigError("temperature_mk must be >= 0");
    mode1.n_initial =
        bose_occupation(cfg.get_double("nu", mode1.nu) * kGammaSI, t_mk * 1e-3);
  }
  configure_mode(cfg, "", mode1);
  spec.modes.push_back(mode1);

  const bool has_mode2 = cfg.has("mode2_nu") || cfg.has("mode2_q_factor") ||
                         cfg.has("mode2_n_initial") || cfg.has("mode2_n_max") ||
                         cfg.has("mode2_eta_ld") || cfg.has("mode2_eta_g") ||
                         cfg.has("mode2_eta_e") || cfg.has("mode2_eta_3");
  if (has_mode2) {
    lindblad::ResonatorParams mode2;
    configure_mode(cfg, "mode2_", mode2);
    spec.modes.push_back(mode2);
  }

  const std::string drive_mode = cfg.get_string("drive", "manual");
  if (drive_mode == "optimal") {
    if (cfg.has("omega_g") || cfg.has("omega_e"))
      throw ConfigError("drive=optimal conflicts with explicit omega_g/omega_e");
    const auto od = rates::optimal_drive(spec.modes[0].nu, spec.drive.delta_e,
                                         cfg.get_double("drive_ratio", 1.0));
    const double scale = cfg.get_double("drive_scale", 1.0);
    spec.drive.omega_g = scale * od.omega_g;
    spec.drive.omega_e = scale * od.omega_e;
  } else if (drive_mode == "manual") {
    spec.drive.omega_g = cfg.get_double("omega_g", 0.0);
    spec.drive.omega_e = cfg.get_double("omega_e", 0.0);
  } else {
    throw ConfigError("drive must be 'manual' or 'optimal'");
  }

  spec.validate();
  return spec;
}

RunResult run_subcommand(const std::string& subcommand, RunConfig cfg,
                         const std::string& out_dir) {
  const auto t_start = std::chrono::steady_clock::now();
  if (std::find(subcommands().begin(), subcommands().end(), subcommand) == subcommands().end())
    throw ConfigError("unknown subcommand '" + subcommand + "'");

  // The hash and the config echo cover the configuration as given, before
  // preset expansion.
  const std::string hash = cfg.canonical_hash();
  ordered_json config_echo;
  for (const auto& [key, value] : cfg.entries()) config_echo[key] = value;
  cfg = expanded(cfg);

  HandlerOutput out = [&] {
    if (subcommand == "qubit") return handle_qubit(cfg);
    if (subcommand == "spectrum") return handle_spectrum(cfg);
    if (subcommand == "rates") return handle_rates(cfg);
    if (subcommand == "cool") return handle_cool(cfg);
    if (subcommand == "steady") return handle_steady(cfg);
    if (subcommand == "sweep") return handle_sweep(cfg);
    if (subcommand == "twomode") return handle_twomode(cfg);
    return handle_converge(cfg);
  }();

  ensure_directory(out_dir);
  const std::string csv_name = subcommand + "_" + hash + ".csv";
  const std::string json_name = subcommand + "_" + hash + ".json";
  const std::string csv_path = join_path(out_dir, csv_name);
  const std::string json_path = join_path(out_dir, json_name);
  write_file(csv_path, out.csv.serialize());

  ordered_json summary;
  summary["subcommand"] = subcommand;
  summary["config_hash"] = hash;
  summary["config"] = config_echo;
  summary["result"] = out.result;
  summary["outputs"] = {csv_name, json_name};
  // Wall time is informational and the one non-deterministic field here; the
  // CSV payload is byte-stable for a fixed configuration.
  summary["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  const std::string summary_text = summary.dump(2) + "\n";
  write_file(json_path, summary_text);

  RunResult result;
  result.summary_json = summary_text;
  result.files_written = {csv_path, json_path};
  return result;
}

}  // namespace eitcool::io
