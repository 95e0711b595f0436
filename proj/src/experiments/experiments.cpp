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

#include "experiments/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace eitcool::experiments {

namespace {

bool wants(const std::vector<Engine>& engines, Engine e) {
  return std::find(engines.begin(), engines.end(), e) != engines.end();
}

void fill_analytic(ComparisonRow& row, const lindblad::ModelSpec& spec) {
  const rates::PhononEstimate est = rates::steady_phonon(spec);
  row.n_ss_rate = est.n_ss_rate;
  row.n_ss_asymptotic = est.n_ss_asymptotic;
  row.w = est.rates.w;
  row.total_rate = est.rates.total_rate;
}

void fill_me(ComparisonRow& row, const lindblad::ModelSpec& spec) {
  const lindblad::SteadyStateResult ss = lindblad::steady_state(spec);
  row.n_ss_me = ss.obs.mean_n.at(0);
  row.me_method = ss.method;
}

}  // namespace

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::kAnalytic: return "analytic";
    case Engine::kMasterEquation: return "me";
    case Engine::kTrajectory: return "traj";
  }
  return "unknown";
}

ComparisonReport sweep_initial_occupation(const SweepSpec& sweep) {
  sweep.base.validate();
  ComparisonReport report;
  report.axis_name = "n_initial";
  for (double v : sweep.values) {
    if (v < 0.0) throw ConfigError("sweep_initial_occupation requires n_initial >= 0");
    lindblad::ModelSpec spec = sweep.base;
    spec.modes.at(0).n_initial = v;
    ComparisonRow row;
    row.axis = v;
    if (wants(sweep.engines, Engine::kAnalytic)) fill_analytic(row, spec);
    if (wants(sweep.engines, Engine::kMasterEquation)) {
      if (v <= sweep.me_occupation_limit) {
        fill_me(row, spec);
      } else {
        row.me_skipped = true;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

ComparisonReport sweep_detuning(const SweepSpec& sweep) {
  sweep.base.validate();
  ComparisonReport report;
  report.axis_name = "delta_e";
  for (double delta_e : sweep.values) {
    lindblad::ModelSpec spec = sweep.base;
    spec.drive.delta_e = delta_e;
    spec.drive.delta_g = sweep.delta_g_ratio * delta_e;
    if (sweep.retune_drives) {
      const rates::OptimalDrive od =
          rates::optimal_drive(spec.modes.at(0).nu, delta_e, sweep.drive_ratio);
      spec.drive.omega_g = sweep.drive_scale * od.omega_g;
      spec.drive.omega_e = sweep.drive_scale * od.omega_e;
    }
    ComparisonRow row;
    row.axis = delta_e;
    if (wants(sweep.engines, Engine::kAnalytic)) fill_analytic(row, spec);
    if (wants(sweep.engines, Engine::kMasterEquation)) fill_me(row, spec);
    report.rows.push_back(std::move(row));
  }
  return report;
}

TwoModeResult two_mode_experiment(const lindblad::ModelSpec& spec, const TwoModeOptions& opts) {
  spec.validate();
  if (spec.modes.size() != 2) throw ConfigError("two_mode_experiment requires two modes");

  TwoModeResult result;
  result.per_mode = rates::two_mode_rates(spec);

  Engine engine = opts.engine;
  if (engine == Engine::kMasterEquation && spec.superop_dim() > opts.me_superop_limit) {
    result.me_refused = true;
    engine = Engine::kTrajectory;
  }
  result.engine_used = engine;

  if (engine == Engine::kAnalytic) return result;
  if (opts.times.empty())
    throw ConfigError("two_mode_experiment requires a time grid for dynamic engines");

  if (engine == Engine::kMasterEquation) {
    result.trace = lindblad::evolve(spec, opts.times);
  } else {
    result.trace = lindblad::trajectory_evolve(spec, opts.times, opts.trajectory);
  }
  return result;
}

ConvergenceStudy convergence_study(const lindblad::ModelSpec& base,
                                   const std::vector<int>& n_max_values) {
  base.validate();
  if (n_max_values.size() < 2)
    throw ConfigError("convergence_study requires at least two truncations");
  if (!std::is_sorted(n_max_values.begin(), n_max_values.end()))
    throw ConfigError("convergence_study requires ascending truncations");

  ConvergenceStudy study;
  for (int n_max : n_max_values) {
    lindblad::ModelSpec spec = base;
    spec.modes.at(0).n_max = n_max;
    const lindblad::SteadyStateResult ss = lindblad::steady_state(spec);
    study.points.push_back({n_max, ss.obs.mean_n.at(0), ss.method});
  }

  const std::size_t n = study.points.size();
  const double x2 = study.points[n - 1].n_ss;
  const double x1 = study.points[n - 2].n_ss;
  study.last_rel_change = std::abs(x2 - x1) / std::max(std::abs(x2), 1e-300);
  if (n >= 3) {
    const double x0 = study.points[n - 3].n_ss;
    const double denom = x2 - 2.0 * x1 + x0;
    if (std::abs(denom) > 1e-14 * std::max({std::abs(x0), std::abs(x1), std::abs(x2)})) {
      study.extrapolated = x2 - (x2 - x1) * (x2 - x1) / denom;
    } else {
      study.extrapolated = x2;
    }
  }
  return study;
}

}  // namespace eitcool::experiments
