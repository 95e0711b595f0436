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

#include "lindblad/model.hpp"

namespace eitcool::lindblad {

namespace {

using linop::OperatorMatrix;

OperatorMatrix qubit_ket_bra(int row, int col) {
  DenseMatrix m = DenseMatrix::Zero(kQubitDim, kQubitDim);
  m(row, col) = 1.0;
  return OperatorMatrix(m);
}

// Lifts a qubit operator and per-mode operators into the full tensor space.
// Any entry left empty means identity on that factor.
OperatorMatrix lift(const ModelSpec& spec, const OperatorMatrix& qubit_op,
                    const std::vector<const OperatorMatrix*>& mode_ops) {
  OperatorMatrix out = qubit_op;
  for (std::size_t k = 0; k < spec.modes.size(); ++k) {
    const int md = spec.modes[k].resolved_n_max() + 1;
    if (mode_ops[k] != nullptr) {
      out = linop::tensor(out, *mode_ops[k]);
    } else {
      out = linop::tensor(out, OperatorMatrix::identity(md));
    }
  }
  return out;
}

}  // namespace

ModelOperators build_operators(const ModelSpec& spec) {
  spec.validate();
  const auto& drv = spec.drive;
  const auto& dec = spec.decoherence;
  const std::size_t n_modes = spec.modes.size();

  std::vector<linop::FockOperators> fock;
  std::vector<OperatorMatrix> position;  // b + b^dag per mode
  for (const auto& m : spec.modes) {
    fock.push_back(linop::fock_operators(m.resolved_n_max()));
    position.emplace_back(fock.back().annihilation + fock.back().creation);
  }

  const int dim = spec.hilbert_dim();
  std::vector<const OperatorMatrix*> idle(n_modes, nullptr);

  // Sideband-dressed transition profile: 1 + sum_k eta_k (b_k + b_k^dag).
  auto dressed = [&](auto eta_of_mode) {
    OperatorMatrix out = OperatorMatrix::identity(dim);
    for (std::size_t k = 0; k < n_modes; ++k) {
      const double eta = eta_of_mode(spec.modes[k]);
      if (eta == 0.0) continue;
      std::vector<const OperatorMatrix*> sel(n_modes, nullptr);
      sel[k] = &position[k];
      out += eta * lift(spec, OperatorMatrix::identity(kQubitDim), sel);
    }
    return out;
  };
  const OperatorMatrix b_g = dressed([](const ResonatorParams& m) { return m.eta_g; });
  const OperatorMatrix b_e = dressed([](const ResonatorParams& m) { return m.eta_e; });
  const OperatorMatrix b_3 = dressed([](const ResonatorParams& m) { return m.eta_3; });

  const OperatorMatrix proj_g = lift(spec, qubit_ket_bra(kLevelG, kLevelG), idle);
  const OperatorMatrix proj_e = lift(spec, qubit_ket_bra(kLevelE, kLevelE), idle);
  const OperatorMatrix ag = lift(spec, qubit_ket_bra(kLevelA, kLevelG), idle);
  const OperatorMatrix ae = lift(spec, qubit_ket_bra(kLevelA, kLevelE), idle);
  const OperatorMatrix ga = lift(spec, qubit_ket_bra(kLevelG, kLevelA), idle);
  const OperatorMatrix ea = lift(spec, qubit_ket_bra(kLevelE, kLevelA), idle);
  const OperatorMatrix ge = lift(spec, qubit_ket_bra(kLevelG, kLevelE), idle);

  ModelOperators ops;

  // Rotating-frame Hamiltonian: detunings, free oscillators, and the two
  // sideband-dressed drives.
  OperatorMatrix h = (-drv.delta_g) * proj_g + (-drv.delta_e) * proj_e;
  for (std::size_t k = 0; k < n_modes; ++k) {
    std::vector<const OperatorMatrix*> sel(n_modes, nullptr);
    sel[k] = &fock[k].number;
    h += spec.modes[k].nu * lift(spec, OperatorMatrix::identity(kQubitDim), sel);
  }
  {
    OperatorMatrix drive_up = drv.omega_g * (ag * b_g) + drv.omega_e * (ae * b_e);
    h += drive_up + drive_up.adjoint();
  }
  ops.hamiltonian = h;

  if (dec.gamma_g > 0.0) ops.jumps.push_back({dec.gamma_g, ga * b_g});
  if (dec.gamma_e > 0.0) ops.jumps.push_back({dec.gamma_e, ea * b_e});
  if (dec.big_gamma > 0.0) ops.jumps.push_back({dec.big_gamma, ge * b_3});
  if (dec.gamma_phi > 0.0) ops.jumps.push_back({0.5 * dec.gamma_phi, proj_e - proj_g});

  for (std::size_t k = 0; k < n_modes; ++k) {
    const auto& m = spec.modes[k];
    const double kappa = m.nu / m.q_factor;
    std::vector<const OperatorMatrix*> sel(n_modes, nullptr);
    sel[k] = &fock[k].annihilation;
    OperatorMatrix b_full = lift(spec, OperatorMatrix::identity(kQubitDim), sel);
    ops.jumps.push_back({(m.n_initial + 1.0) * kappa, b_full});
    if (m.n_initial > 0.0) ops.jumps.push_back({m.n_initial * kappa, b_full.adjoint()});

    sel[k] = &fock[k].number;
    ops.mode_number.push_back(lift(spec, OperatorMatrix::identity(kQubitDim), sel));
  }

  return ops;
}

linop::SuperOperator build_liouvillian(const ModelSpec& spec) {
  const ModelOperators ops = build_operators(spec);
  linop::SuperOperator liou = linop::hamiltonian_liouvillian(ops.hamiltonian);
  for (const auto& jump : ops.jumps) liou += linop::lindblad_term(jump.rate, jump.op);
  return liou;
}

}  // namespace eitcool::lindblad
