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

#include "fluxqubit/fluxqubit.hpp"

#include <cmath>
#include <vector>

namespace eitcool::fluxqubit {

namespace {

int charge_index(int n1, int n2, int n_cut) {
  const int side = 2 * n_cut + 1;
  return (n1 + n_cut) * side + (n2 + n_cut);
}

// Antiunitary symmetry of the loop Hamiltonian: complex conjugation combined
// with charge conjugation n -> -n. Commutes with h, sin_loop and cos_loop
// for every flux bias.
Vector charge_parity_conjugate(const Vector& psi, int n_cut) {
  Vector out(psi.size());
  for (int n1 = -n_cut; n1 <= n_cut; ++n1)
    for (int n2 = -n_cut; n2 <= n_cut; ++n2)
      out[charge_index(n1, n2, n_cut)] =
          std::conj(psi[charge_index(-n1, -n2, n_cut)]);
  return out;
}

Vector fix_gauge(const Vector& psi, int n_cut) {
  Vector sym = psi + charge_parity_conjugate(psi, n_cut);
  if (sym.norm() < 1e-8) sym = kI * (psi - charge_parity_conjugate(psi, n_cut));
  const double norm = sym.norm();
  if (norm < 1e-8) throw NumericalError("gauge fixing failed: null symmetrized eigenvector");
  return sym / norm;
}

double real_element(const Vector& bra, const SparseMatrix& op, const Vector& ket) {
  const cdouble v = bra.dot(op * ket);
  if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v)))
    throw NumericalError("matrix element not real after gauge fixing");
  return v.real();
}

}  // namespace

void JunctionParams::validate() const {
  if (alpha <= 0.0 || alpha >= 2.0) throw ConfigError("alpha must be in (0, 2)");
  if (e_j_ghz <= 0.0) throw ConfigError("e_j_ghz must be positive");
  if (ej_over_ec <= 0.0) throw ConfigError("ej_over_ec must be positive");
  if (f < 0.0 || f > 1.0) throw ConfigError("flux bias f must be in [0, 1]");
}

ChargeBasisHamiltonian build_hamiltonian(const JunctionParams& params, int n_cut) {
  params.validate();
  if (n_cut < 1) throw ConfigError("n_cut must be >= 1");

  const int side = 2 * n_cut + 1;
  const int dim = side * side;
  const double e_c = params.e_c_ghz();
  const double e_j = params.e_j_ghz;
  const cdouble loop_phase = std::exp(kI * (2.0 * kPi * params.f));

  std::vector<Triplet> h_entries, sin_entries, cos_entries;
  h_entries.reserve(static_cast<std::size_t>(dim) * 4);

  for (int n1 = -n_cut; n1 <= n_cut; ++n1) {
    for (int n2 = -n_cut; n2 <= n_cut; ++n2) {
      const int i = charge_index(n1, n2, n_cut);
      // Charging energy in the (n_m, n_p) = (n1 - n2, n1 + n2) coordinates;
      // the common mode carries the alpha-junction capacitance.
      const double nm = n1 - n2;
      const double np = n1 + n2;
      h_entries.emplace_back(
          i, i, 2.0 * e_c * (nm * nm + np * np / (1.0 + 2.0 * params.alpha)));

      // -E_J cos(phi_k) for the two main junctions; e^{i phi} raises the
      // junction charge by one.
      if (n1 < n_cut) {
        const int j = charge_index(n1 + 1, n2, n_cut);
        h_entries.emplace_back(j, i, -0.5 * e_j);
        h_entries.emplace_back(i, j, -0.5 * e_j);
      }
      if (n2 < n_cut) {
        const int j = charge_index(n1, n2 + 1, n_cut);
        h_entries.emplace_back(j, i, -0.5 * e_j);
        h_entries.emplace_back(i, j, -0.5 * e_j);
      }
      // Small junction: -alpha E_J cos(phi_1 + phi_2 + 2 pi f).
      if (n1 < n_cut && n2 < n_cut) {
        const int j = charge_index(n1 + 1, n2 + 1, n_cut);
        const cdouble up = -0.5 * params.alpha * e_j * loop_phase;
        h_entries.emplace_back(j, i, up);
        h_entries.emplace_back(i, j, std::conj(up));
        // sin = (e^{i theta} U - h.c.) / (2i), cos = (e^{i theta} U + h.c.) / 2
        // with U the double raise.
        sin_entries.emplace_back(j, i, loop_phase / (2.0 * kI));
        sin_entries.emplace_back(i, j, -std::conj(loop_phase) / (2.0 * kI));
        cos_entries.emplace_back(j, i, 0.5 * loop_phase);
        cos_entries.emplace_back(i, j, 0.5 * std::conj(loop_phase));
      }
    }
  }

  ChargeBasisHamiltonian cb;
  cb.params = params;
  cb.n_cut = n_cut;
  cb.dim = dim;
  cb.h = SparseMatrix(dim, dim);
  cb.h.setFromTriplets(h_entries.begin(), h_entries.end());
  cb.sin_loop = SparseMatrix(dim, dim);
  cb.sin_loop.setFromTriplets(sin_entries.begin(), sin_entries.end());
  cb.cos_loop = SparseMatrix(dim, dim);
  cb.cos_loop.setFromTriplets(cos_entries.begin(), cos_entries.end());
  return cb;
}

QubitLevels solve_levels(const ChargeBasisHamiltonian& cb) {
  DenseMatrix h = DenseMatrix(cb.h);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw NumericalError("charge-basis eigensolver failed");

  const auto& evals = solver.eigenvalues();
  Vector vg = fix_gauge(solver.eigenvectors().col(0), cb.n_cut);
  Vector ve = fix_gauge(solver.eigenvectors().col(1), cb.n_cut);
  Vector va = fix_gauge(solver.eigenvectors().col(2), cb.n_cut);

  if (real_element(va, cb.sin_loop, vg) < 0.0) vg = -vg;
  if (real_element(va, cb.sin_loop, ve) < 0.0) ve = -ve;

  QubitLevels lv;
  lv.f = cb.params.f;
  lv.e_g_ghz = evals[0];
  lv.e_e_ghz = evals[1];
  lv.e_a_ghz = evals[2];
  lv.omega_eg_ghz = evals[1] - evals[0];
  lv.omega_ag_ghz = evals[2] - evals[0];
  lv.omega_ae_ghz = evals[2] - evals[1];
  lv.gap_identity_defect = std::abs(lv.omega_ag_ghz - (lv.omega_ae_ghz + lv.omega_eg_ghz));

  lv.s_ag = real_element(va, cb.sin_loop, vg);
  lv.s_ae = real_element(va, cb.sin_loop, ve);
  lv.s_eg = real_element(ve, cb.sin_loop, vg);
  lv.c_ag = real_element(va, cb.cos_loop, vg);
  lv.c_ae = real_element(va, cb.cos_loop, ve);
  lv.c_eg = real_element(ve, cb.cos_loop, vg);
  lv.c_gg = real_element(vg, cb.cos_loop, vg);
  lv.c_ee = real_element(ve, cb.cos_loop, ve);
  lv.c_aa = real_element(va, cb.cos_loop, va);
  return lv;
}

double truncation_shift(const JunctionParams& params, int n_cut) {
  const QubitLevels a = solve_levels(build_hamiltonian(params, n_cut));
  const QubitLevels b = solve_levels(build_hamiltonian(params, 2 * n_cut));
  double shift = 0.0;
  shift = std::max(shift, std::abs(a.omega_eg_ghz - b.omega_eg_ghz) / std::abs(b.omega_eg_ghz));
  shift = std::max(shift, std::abs(a.omega_ag_ghz - b.omega_ag_ghz) / std::abs(b.omega_ag_ghz));
  shift = std::max(shift, std::abs(a.omega_ae_ghz - b.omega_ae_ghz) / std::abs(b.omega_ae_ghz));
  return shift;
}

bool truncation_converged(const JunctionParams& params, int n_cut, double rel_tol) {
  return truncation_shift(params, n_cut) < rel_tol;
}

CouplingParams coupling_parameters(const QubitLevels& levels, double b_field_t, double length_m,
                                   double m_eff_kg, double nu_rad_s) {
  if (b_field_t < 0.0 || length_m <= 0.0 || m_eff_kg <= 0.0 || nu_rad_s <= 0.0)
    throw ConfigError("coupling_parameters: geometry values must be positive");
  const double denominator_floor = 1e-9;
  if (std::abs(levels.s_ag) < denominator_floor || std::abs(levels.s_ae) < denominator_floor ||
      std::abs(levels.s_eg) < denominator_floor)
    throw NumericalError("coupling_parameters: loop-phase matrix element too small");

  CouplingParams cp;
  cp.b_field_t = b_field_t;
  cp.length_m = length_m;
  cp.x0_m = std::sqrt(kHbar / (2.0 * m_eff_kg * nu_rad_s));
  cp.flux_scale = b_field_t * length_m * cp.x0_m * (2.0 * kPi / kFluxQuantum);
  cp.eta_g = cp.flux_scale * levels.c_ag / levels.s_ag;
  cp.eta_e = cp.flux_scale * levels.c_ae / levels.s_ae;
  cp.eta_3 = cp.flux_scale * levels.c_eg / levels.s_eg;
  // The sign of B l x depends on the loop orientation relative to the
  // displacement axis. Only relative signs of the couplings are physical
  // (a global flip is the b -> -b convention), so orient the axis such
  // that the cooling-transition coupling is positive.
  if (cp.eta_g < 0.0) {
    cp.eta_g = -cp.eta_g;
    cp.eta_e = -cp.eta_e;
    cp.eta_3 = -cp.eta_3;
  }
  cp.eta_ld = std::abs(cp.eta_g - cp.eta_e);
  return cp;
}

RabiPair rabi_frequencies(const QubitLevels& levels, const JunctionParams& params, double a_g_wb,
                          double a_e_wb, double gamma_rad_s) {
  if (gamma_rad_s <= 0.0) throw ConfigError("rabi_frequencies requires gamma_rad_s > 0");
  const double e_j_rad_s = 2.0 * kPi * params.e_j_ghz * 1e9;
  const double phi_bar = 2.0 * kPi / kFluxQuantum;
  RabiPair out;
  out.omega_g = 0.5 * params.alpha * e_j_rad_s * phi_bar * a_g_wb * levels.s_ag / gamma_rad_s;
  out.omega_e = 0.5 * params.alpha * e_j_rad_s * phi_bar * a_e_wb * levels.s_ae / gamma_rad_s;
  return out;
}

}  // namespace eitcool::fluxqubit
