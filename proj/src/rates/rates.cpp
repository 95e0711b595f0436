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

#include "rates/rates.hpp"

#include <cmath>
#include <limits>

namespace eitcool::rates {

namespace {

using lindblad::kLevelA;
using lindblad::kLevelE;
using lindblad::kLevelG;
using lindblad::kQubitDim;

// Sideband Lorentzian weight: gamma^2 nu^2 / (gamma^2 nu^2 + 4 (omega^2 - nu (nu + s*delta))^2).
double sideband_weight(double omega_sq, double nu, double delta, double gamma, double sign) {
  const double gn = gamma * nu;
  const double mismatch = omega_sq - nu * (nu + sign * delta);
  return gn * gn / (gn * gn + 4.0 * mismatch * mismatch);
}

}  // namespace

lindblad::DensityMatrix qubit_steady_state(const lindblad::DriveParams& drive,
                                           const lindblad::DecoherenceParams& dec) {
  DenseMatrix h = DenseMatrix::Zero(kQubitDim, kQubitDim);
  h(kLevelG, kLevelG) = -drive.delta_g;
  h(kLevelE, kLevelE) = -drive.delta_e;
  h(kLevelA, kLevelG) = drive.omega_g;
  h(kLevelG, kLevelA) = drive.omega_g;
  h(kLevelA, kLevelE) = drive.omega_e;
  h(kLevelE, kLevelA) = drive.omega_e;

  auto ket_bra = [](int r, int c) {
    DenseMatrix m = DenseMatrix::Zero(kQubitDim, kQubitDim);
    m(r, c) = 1.0;
    return linop::OperatorMatrix(m);
  };

  linop::SuperOperator liou = linop::hamiltonian_liouvillian(linop::OperatorMatrix(h));
  if (dec.gamma_g > 0.0) liou += linop::lindblad_term(dec.gamma_g, ket_bra(kLevelG, kLevelA));
  if (dec.gamma_e > 0.0) liou += linop::lindblad_term(dec.gamma_e, ket_bra(kLevelE, kLevelA));
  if (dec.big_gamma > 0.0) liou += linop::lindblad_term(dec.big_gamma, ket_bra(kLevelG, kLevelE));
  if (dec.gamma_phi > 0.0)
    liou += linop::lindblad_term(0.5 * dec.gamma_phi,
                                 ket_bra(kLevelE, kLevelE) - ket_bra(kLevelG, kLevelG));

  // Null space with the trace row substituted in place of the first
  // equation; 9x9, dense LU.
  DenseMatrix m = DenseMatrix(liou.matrix());
  m.row(0).setZero();
  for (int i = 0; i < kQubitDim; ++i) m(0, i * (kQubitDim + 1)) = 1.0;
  Vector b = Vector::Zero(kQubitDim * kQubitDim);
  b[0] = 1.0;
  Vector x = m.fullPivLu().solve(b);

  DenseMatrix rho = linop::unstack(x, kQubitDim);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();

  return lindblad::DensityMatrix::from_matrix(rho);
}

RateResult transition_rates(const lindblad::ModelSpec& spec, int mode,
                            bool include_scattering_correction) {
  spec.validate();
  if (mode < 0 || mode >= static_cast<int>(spec.modes.size()))
    throw ConfigError("transition_rates: mode index out of range");
  const auto& drv = spec.drive;
  const auto& dec = spec.decoherence;
  const auto& res = spec.modes[mode];
  const double gamma = dec.gamma();
  const double eta_ld = res.eta_ld();

  RateResult out;
  out.detunings_locked = drv.delta_g == drv.delta_e;
  const double delta = drv.delta_e;
  const double omega_sq = drv.omega_sq();

  if (omega_sq > 0.0) {
    const double prefactor = 4.0 * eta_ld * eta_ld * drv.omega_g * drv.omega_g * drv.omega_e *
                             drv.omega_e / (omega_sq * gamma);
    out.a_plus = prefactor * sideband_weight(omega_sq, res.nu, delta, gamma, +1.0);
    out.a_minus = prefactor * sideband_weight(omega_sq, res.nu, delta, gamma, -1.0);
  }
  out.w = out.a_minus - out.a_plus;

  if (include_scattering_correction && omega_sq > 0.0) {
    const lindblad::DensityMatrix rho_q = qubit_steady_state(drv, dec);
    const double pop_a = rho_q.vec[kLevelA * kQubitDim + kLevelA].real();
    const double pop_e = rho_q.vec[kLevelE * kQubitDim + kLevelE].real();
    out.delta_a_plus = 0.5 * (res.eta_g * res.eta_g * dec.gamma_g +
                              res.eta_e * res.eta_e * dec.gamma_e) * pop_a +
                       0.5 * res.eta_3 * res.eta_3 * dec.big_gamma * pop_e;
  }

  out.nu_over_q = res.nu / res.q_factor;
  out.n_bath = res.n_initial;
  out.total_rate = out.w + out.nu_over_q;
  out.cooling = out.total_rate > 0.0;
  const double heating = out.a_plus + out.delta_a_plus + out.nu_over_q * out.n_bath;
  out.n_ss = out.total_rate > 0.0 ? heating / out.total_rate
                                  : std::numeric_limits<double>::infinity();
  return out;
}

PhononEstimate steady_phonon(const lindblad::ModelSpec& spec, int mode,
                             bool include_scattering_correction) {
  PhononEstimate est;
  est.rates = transition_rates(spec, mode, include_scattering_correction);
  est.n_ss_rate = est.rates.n_ss;
  est.n_ss_asymptotic = std::numeric_limits<double>::quiet_NaN();

  const auto& drv = spec.drive;
  const auto& dec = spec.decoherence;
  const auto& res = spec.modes[mode];
  const double gamma = dec.gamma();
  const double delta = drv.delta_e;
  const double eta_ld = res.eta_ld();

  if (std::abs(delta) <= res.nu || drv.omega_g == 0.0 || eta_ld == 0.0) return est;
  const double r = drv.omega_e / drv.omega_g;
  const double floor_term = gamma * gamma / (16.0 * delta * delta);
  const double env = res.n_initial / (res.q_factor * eta_ld * eta_ld * std::abs(delta));

  if (r >= 4.0) {
    est.regime = Regime::kWeakPump;
    est.n_ss_asymptotic = 0.25 * gamma * r * r * env + floor_term;
  } else if (r >= 0.8 && r <= 1.25) {
    est.regime = Regime::kBalanced;
    est.n_ss_asymptotic = gamma * env + floor_term;
  }
  return est;
}

OptimalDrive optimal_drive(double nu, double delta, double ratio) {
  if (nu <= 0.0) throw ConfigError("optimal_drive requires nu > 0");
  const double omega_sq = nu * (nu - delta);
  if (omega_sq <= 0.0)
    throw ConfigError("optimal_drive: nu * (nu - delta) must be positive");
  if (ratio <= 0.0) throw ConfigError("optimal_drive requires ratio > 0");
  OptimalDrive out;
  out.omega_total = std::sqrt(omega_sq);
  out.omega_g = out.omega_total / std::sqrt(1.0 + ratio * ratio);
  out.omega_e = ratio * out.omega_g;
  return out;
}

std::vector<SpectrumPoint> absorption_spectrum(const lindblad::DriveParams& base,
                                               const lindblad::DecoherenceParams& dec,
                                               const std::vector<double>& delta_g_grid,
                                               double probe_omega) {
  if (probe_omega <= 0.0) throw ConfigError("absorption_spectrum requires probe_omega > 0");
  std::vector<SpectrumPoint> out;
  out.reserve(delta_g_grid.size());
  lindblad::DriveParams drive = base;
  drive.omega_g = probe_omega;
  const double gamma = dec.gamma();
  for (double dg : delta_g_grid) {
    drive.delta_g = dg;
    const lindblad::DensityMatrix rho = qubit_steady_state(drive, dec);
    SpectrumPoint pt;
    pt.delta_g = dg;
    pt.pop_a = rho.vec[kLevelA * kQubitDim + kLevelA].real();
    pt.absorption = gamma * pt.pop_a;
    out.push_back(pt);
  }
  return out;
}

std::vector<double> rate_evolve(const lindblad::ModelSpec& spec, const std::vector<double>& times,
                                int mode) {
  const RateResult rr = transition_rates(spec, mode);
  const double n0 = spec.modes[mode].n_initial;
  const double heating = rr.a_plus + rr.delta_a_plus + rr.nu_over_q * rr.n_bath;
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    if (rr.total_rate > 0.0) {
      out.push_back(rr.n_ss + (n0 - rr.n_ss) * std::exp(-rr.total_rate * t));
    } else {
      // Non-cooling fixed point does not exist; integrate the linear ODE
      // n' = -R n + heating directly.
      const double r = rr.total_rate;
      out.push_back(r == 0.0 ? n0 + heating * t
                             : (n0 + heating / r) * std::exp(-r * t) - heating / r);
    }
  }
  return out;
}

std::vector<RateResult> two_mode_rates(const lindblad::ModelSpec& spec) {
  spec.validate();
  std::vector<RateResult> out;
  for (int k = 0; k < static_cast<int>(spec.modes.size()); ++k)
    out.push_back(transition_rates(spec, k));
  return out;
}

}  // namespace eitcool::rates
