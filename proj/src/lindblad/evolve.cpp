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

#include <algorithm>

#include "lindblad/model.hpp"

namespace eitcool::lindblad {

CoolingTrace evolve(const ModelSpec& spec, const std::vector<double>& times,
                    const EvolveOptions& opts) {
  spec.validate();
  if (times.empty()) throw ConfigError("evolve requires a non-empty time grid");
  if (!std::is_sorted(times.begin(), times.end()))
    throw ConfigError("evolve requires an ascending time grid");
  if (times.front() < 0.0) throw ConfigError("evolve requires t >= 0");

  const linop::SuperOperator liou = build_liouvillian(spec);
  DensityMatrix rho = opts.initial.has_value() ? *opts.initial : initial_state(spec);
  if (rho.dim != spec.hilbert_dim())
    throw ConfigError("evolve: initial state dimension does not match model");

  const SparseMatrix& mat = liou.matrix();
  Rhs rhs = [&mat](double, const Vector& y) { return Vector(mat * y); };

  DormandPrince stepper(rhs, opts.integrator);
  stepper.reset(0.0, rho.vec);

  CoolingTrace trace;
  trace.times = times;
  for (double t : times) {
    stepper.advance_to(t);
    Observables obs = observables(spec, stepper.state());
    trace.mean_n.push_back(obs.mean_n);
    trace.pop_g.push_back(obs.pop_g);
    trace.pop_e.push_back(obs.pop_e);
    trace.pop_a.push_back(obs.pop_a);
    trace.trace_defect.push_back(obs.trace_defect);
  }

  if (opts.keep_final_state) {
    // The exact flow preserves Hermiticity; integrator roundoff does not.
    // Reporting the Hermitian part leaves every observable unchanged.
    DenseMatrix rho_final = linop::unstack(stepper.state(), spec.hilbert_dim());
    rho_final = 0.5 * (rho_final + rho_final.adjoint()).eval();
    trace.final_state = DensityMatrix::from_matrix(rho_final);
  }
  return trace;
}

}  // namespace eitcool::lindblad
