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

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rates/rates.hpp"

namespace eitcool::experiments {

enum class Engine { kAnalytic, kMasterEquation, kTrajectory };

std::string engine_name(Engine e);

struct SweepSpec {
  lindblad::ModelSpec base;
  std::vector<double> values;
  std::vector<Engine> engines{Engine::kAnalytic, Engine::kMasterEquation};

  // Detuning sweeps: delta_e = value, delta_g = delta_g_ratio * value, and
  // when retune_drives is set the drive amplitudes follow
  // drive_scale * sqrt(nu (nu - delta_e)) split by drive_ratio.
  bool retune_drives = true;
  double drive_scale = 1.0;
  double drive_ratio = 1.0;  // omega_e / omega_g
  double delta_g_ratio = 1.0;

  // Full master-equation points are skipped above this initial occupation;
  // the analytic columns still cover them.
  double me_occupation_limit = 20.0;
};

struct ComparisonRow {
  double axis = 0.0;
  double n_ss_rate = std::numeric_limits<double>::quiet_NaN();
  double n_ss_asymptotic = std::numeric_limits<double>::quiet_NaN();
  double n_ss_me = std::numeric_limits<double>::quiet_NaN();
  double w = std::numeric_limits<double>::quiet_NaN();
  double total_rate = std::numeric_limits<double>::quiet_NaN();
  std::string me_method;
  bool me_skipped = false;
};

struct ComparisonReport {
  std::string axis_name;
  std::vector<ComparisonRow> rows;
};

// Cooling limit versus the bath occupation at fixed drives.
ComparisonReport sweep_initial_occupation(const SweepSpec& sweep);

// Cooling limit versus the coupling-drive detuning.
ComparisonReport sweep_detuning(const SweepSpec& sweep);

struct TwoModeOptions {
  Engine engine = Engine::kTrajectory;
  // A direct master-equation run is refused above this superoperator
  // dimension and falls back to trajectories. Integrating a two-mode
  // density matrix to t ~ 1e3/gamma is only affordable well below the
  // single-mode solver limits.
  int me_superop_limit = 60'000;
  std::vector<double> times;
  lindblad::TrajectoryOptions trajectory;
};

struct TwoModeResult {
  std::vector<rates::RateResult> per_mode;
  std::optional<lindblad::CoolingTrace> trace;
  Engine engine_used = Engine::kAnalytic;
  bool me_refused = false;
};

TwoModeResult two_mode_experiment(const lindblad::ModelSpec& spec, const TwoModeOptions& opts);

struct ConvergencePoint {
  int n_max = 0;
  double n_ss = 0.0;
  std::string method;
};

struct ConvergenceStudy {
  std::vector<ConvergencePoint> points;
  // Aitken delta-squared estimate from the last three points; NaN when the
  // sequence has stalled below round-off.
  double extrapolated = std::numeric_limits<double>::quiet_NaN();
  double last_rel_change = std::numeric_limits<double>::quiet_NaN();
};

// Steady-state occupation of mode 0 across Fock truncations.
ConvergenceStudy convergence_study(const lindblad::ModelSpec& base,
                                   const std::vector<int>& n_max_values);

}  // namespace eitcool::experiments
