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

#include <random>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include "lindblad/model.hpp"

namespace eitcool::lindblad {

namespace {

// Null-space problem L rho = 0 regularized by replacing the first row with
// the trace functional, so the unique solution has tr(rho) = 1 up to solver
// accuracy. Column stacking puts diagonal elements at i * (dim + 1).
SparseMatrix trace_row_replaced(const SparseMatrix& liou, int dim) {
  std::vector<Triplet> entries;
  entries.reserve(liou.nonZeros() + dim);
  for (int k = 0; k < liou.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(liou, k); it; ++it)
      if (it.row() != 0) entries.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < dim; ++i)
    entries.emplace_back(0, i * (dim + 1), cdouble{1.0, 0.0});
  SparseMatrix m(liou.rows(), liou.cols());
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

double residual_inf_norm(const SparseMatrix& liou, const Vector& rho_vec) {
  Vector r = liou * rho_vec;
  return r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

SteadyStateResult steady_state(const ModelSpec& spec, const SteadyOptions& opts) {
  spec.validate();
  const int dim = spec.hilbert_dim();
  const linop::SuperOperator liou = build_liouvillian(spec);
  const SparseMatrix& lmat = liou.matrix();
  const SparseMatrix system = trace_row_replaced(lmat, dim);

  Vector b = Vector::Zero(system.rows());
  b[0] = 1.0;

  Vector x;
  std::string method;

  if (system.rows() <= opts.direct_solver_limit) {
    method = "sparse_lu";
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> solver;
    solver.analyzePattern(system);
    solver.factorize(system);
    if (solver.info() != Eigen::Success)
      throw NumericalError("steady_state: sparse LU factorization failed");
    x = solver.solve(b);
    for (int pass = 0; pass < opts.max_refinement_passes; ++pass) {
      Vector r = b - system * x;
      if (r.cwiseAbs().maxCoeff() < 0.1 * opts.residual_tolerance) break;
      x += solver.solve(r);
    }
  } else {
    method = "bicgstab_ilut";
    Eigen::BiCGSTAB<SparseMatrix, Eigen::IncompleteLUT<cdouble>> solver;
    solver.preconditioner().setDroptol(1e-7);
    // The ILUT factor is the dominant allocation; cap its per-row fill on
    // very large systems to stay within a few GB.
    solver.preconditioner().setFillfactor(system.rows() > 400'000 ? 10 : 20);
    solver.setTolerance(1e-13);
    solver.setMaxIterations(20000);
    solver.compute(system);
    if (solver.info() != Eigen::Success)
      throw NumericalError("steady_state: ILUT preconditioner construction failed");
    if (opts.guess_seed != 0) {
      std::mt19937_64 gen(opts.guess_seed);
      std::normal_distribution<double> dist(0.0, 1.0);
      Vector guess(system.rows());
      for (Eigen::Index i = 0; i < guess.size(); ++i) guess[i] = cdouble{dist(gen), dist(gen)};
      guess /= guess.norm();
      x = solver.solveWithGuess(b, guess);
    } else {
      x = solver.solve(b);
    }
    for (int pass = 0; pass < opts.max_refinement_passes; ++pass) {
      Vector r = b - system * x;
      if (r.cwiseAbs().maxCoeff() < 0.1 * opts.residual_tolerance) break;
      x = solver.solveWithGuess(b, x);
    }
  }

  if (!x.allFinite()) throw NumericalError("steady_state: solver produced non-finite state");

  // Hermitize and renormalize; both are no-ops up to solver accuracy.
  DenseMatrix rho = linop::unstack(x, dim);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const double tr = rho.trace().real();
  if (tr <= 0.0) throw NumericalError("steady_state: non-positive trace");
  rho /= tr;

  SteadyStateResult out;
  out.rho.dim = dim;
  out.rho.vec = linop::stack(rho);
  out.residual_inf = residual_inf_norm(lmat, out.rho.vec);
  out.method = method;
  out.obs = observables(spec, out.rho.vec);

  if (out.residual_inf > opts.residual_tolerance)
    throw NumericalError("steady_state: residual " + format_sig12(out.residual_inf) +
                         " exceeds tolerance " + format_sig12(opts.residual_tolerance));
  return out;
}

}  // namespace eitcool::lindblad
