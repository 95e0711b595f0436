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

#include <vector>

#include "lindblad/model.hpp"

namespace eitcool::rates {

// Second-order sideband scattering rates for one mechanical mode.
// All rates in units of gamma.
struct RateResult {
  double a_plus = 0.0;        // carrier-to-blue heating rate
  double a_minus = 0.0;       // red-sideband cooling rate
  double w = 0.0;             // a_minus - a_plus
  double delta_a_plus = 0.0;  // diffusion from carrier photon scattering
  double nu_over_q = 0.0;     // bath coupling
  double n_bath = 0.0;
  double total_rate = 0.0;    // w + nu/q
  double n_ss = 0.0;          // fixed point of the occupation rate equation
  bool cooling = false;       // total_rate > 0
  // The closed form assumes both drives share one detuning; when they do
  // not, delta_e is used as the reference and this flag is cleared.
  bool detunings_locked = true;
};

// Steady state of the bare three-level system (no mechanical mode) under
// both drives; solved from its 9-dimensional Liouvillian.
lindblad::DensityMatrix qubit_steady_state(const lindblad::DriveParams& drive,
                                           const lindblad::DecoherenceParams& dec);

// Scattering rates for spec.modes[mode]. The carrier-diffusion correction
// delta_a_plus uses the bare qubit steady state and can be disabled to
// recover the pure sideband expression.
RateResult transition_rates(const lindblad::ModelSpec& spec, int mode = 0,
                            bool include_scattering_correction = true);

enum class Regime { kWeakPump, kBalanced, kOutside };

struct PhononEstimate {
  RateResult rates;
  double n_ss_rate = 0.0;        // exact rate-equation fixed point
  double n_ss_asymptotic = 0.0;  // regime-specific closed form (NaN outside)
  Regime regime = Regime::kOutside;
};

// Validity gates for the closed forms: |delta| > nu, and either
// r = omega_e/omega_g >= 4 (weak-pump branch) or 0.8 <= r <= 1.25
// (balanced branch).
PhononEstimate steady_phonon(const lindblad::ModelSpec& spec, int mode = 0,
                             bool include_scattering_correction = true);

struct OptimalDrive {
  double omega_total = 0.0;  // sqrt(nu * (nu - delta))
  double omega_g = 0.0;
  double omega_e = 0.0;
};

// Drive strength that centers the red sideband on the dressed resonance.
// Requires nu * (nu - delta) > 0; ratio = omega_e / omega_g.
OptimalDrive optimal_drive(double nu, double delta, double ratio = 1.0);

struct SpectrumPoint {
  double delta_g = 0.0;
  double pop_a = 0.0;
  double absorption = 0.0;  // gamma * pop_a
};

// Weak-probe absorption of the g-a transition versus probe detuning, with
// the coupling drive on e-a held at base.omega_e / base.delta_e.
std::vector<SpectrumPoint> absorption_spectrum(const lindblad::DriveParams& base,
                                               const lindblad::DecoherenceParams& dec,
                                               const std::vector<double>& delta_g_grid,
                                               double probe_omega = 0.05);

// Closed-form occupation trace n(t) = n_ss + (n0 - n_ss) exp(-R t).
std::vector<double> rate_evolve(const lindblad::ModelSpec& spec, const std::vector<double>& times,
                                int mode = 0);

// Per-mode rates for a two-mode model. Both modes share the drives; the
// reference detuning is delta_e.
std::vector<RateResult> two_mode_rates(const lindblad::ModelSpec& spec);

}  // namespace eitcool::rates
