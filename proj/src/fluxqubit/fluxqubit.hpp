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

#include "common.hpp"

namespace eitcool::fluxqubit {

// Three-junction loop: two identical junctions (E_J, C_J) and a smaller one
// (alpha E_J, alpha C_J), biased by an external flux f in units of Phi_0.
struct JunctionParams {
  double alpha = 0.7;
  double e_j_ghz = 200.0;    // E_J / h
  double ej_over_ec = 50.0;  // E_C = e^2 / (2 C_J)
  double f = 0.5005;

  double e_c_ghz() const { return e_j_ghz / ej_over_ec; }
  void validate() const;
};

// Circuit Hamiltonian in the per-junction charge basis |n1, n2>,
// |n_i| <= n_cut; dim = (2 n_cut + 1)^2. The loop-phase operators
// sin/cos(2 phi_p + 2 pi f) are kept alongside for matrix elements.
struct ChargeBasisHamiltonian {
  JunctionParams params;
  int n_cut = 0;
  int dim = 0;
  SparseMatrix h;
  SparseMatrix sin_loop;
  SparseMatrix cos_loop;
};

ChargeBasisHamiltonian build_hamiltonian(const JunctionParams& params, int n_cut);

// Lowest three levels and their loop-phase matrix elements in a fixed real
// gauge (eigenvectors chosen invariant under charge conjugation combined
// with complex conjugation, signs fixed so s_ag > 0 and s_ae > 0).
struct QubitLevels {
  double f = 0.0;
  double e_g_ghz = 0.0, e_e_ghz = 0.0, e_a_ghz = 0.0;
  double omega_eg_ghz = 0.0, omega_ag_ghz = 0.0, omega_ae_ghz = 0.0;
  double s_ag = 0.0, s_ae = 0.0, s_eg = 0.0;
  double c_ag = 0.0, c_ae = 0.0, c_eg = 0.0;
  double c_gg = 0.0, c_ee = 0.0, c_aa = 0.0;
  // |omega_ag - (omega_ae + omega_eg)|; zero up to eigensolver round-off.
  double gap_identity_defect = 0.0;
};

QubitLevels solve_levels(const ChargeBasisHamiltonian& cb);

// Largest relative change of the three transition frequencies when n_cut is
// doubled; the truncation is accepted below 1e-6.
double truncation_shift(const JunctionParams& params, int n_cut);
bool truncation_converged(const JunctionParams& params, int n_cut, double rel_tol = 1e-6);

// Mechanical sideband couplings for a beam of length length_m carrying the
// loop in field b_field_t, with zero-point amplitude x0 = sqrt(hbar/(2 m nu)).
struct CouplingParams {
  double b_field_t = 0.0;
  double length_m = 0.0;
  double x0_m = 0.0;
  double flux_scale = 0.0;  // B * l * x0 * (2 pi / Phi_0), dimensionless
  double eta_g = 0.0;
  double eta_e = 0.0;
  double eta_3 = 0.0;
  double eta_ld = 0.0;  // |eta_g - eta_e|
};

CouplingParams coupling_parameters(const QubitLevels& levels, double b_field_t, double length_m,
                                   double m_eff_kg, double nu_rad_s);

// Rabi amplitudes (units of gamma_rad_s) produced by drive tones that
// modulate the loop flux with amplitudes a_g_wb, a_e_wb.
struct RabiPair {
  double omega_g = 0.0;
  double omega_e = 0.0;
};

RabiPair rabi_frequencies(const QubitLevels& levels, const JunctionParams& params, double a_g_wb,
                          double a_e_wb, double gamma_rad_s = kGammaSI);

}  // namespace eitcool::fluxqubit
