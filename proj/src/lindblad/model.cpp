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

#include <cmath>

namespace eitcool::lindblad {

double DriveParams::ratio() const {
  if (omega_g == 0.0) throw ConfigError("drive ratio undefined: omega_g is zero");
  return omega_e / omega_g;
}

int ResonatorParams::resolved_n_max() const {
  if (n_max >= 2) return n_max;
  if (n_max != -1) throw ConfigError("n_max must be >= 2 or -1 (auto)");
  return static_cast<int>(std::ceil(5.0 * n_initial + 15.0));
}

void ResonatorParams::set_etas_from_eta_ld(double eta_ld) {
  if (eta_ld < 0.0) throw ConfigError("eta_ld must be >= 0");
  const double scale = eta_ld / std::abs(kEtaRatioG - kEtaRatioE);
  eta_g = kEtaRatioG * scale;
  eta_e = kEtaRatioE * scale;
  eta_3 = kEtaRatio3 * scale;
}

int ModelSpec::hilbert_dim() const {
  int d = kQubitDim;
  for (const auto& m : modes) d *= m.resolved_n_max() + 1;
  return d;
}

int ModelSpec::superop_dim() const {
  const int d = hilbert_dim();
  return d * d;
}

void ModelSpec::validate() const {
  if (modes.empty() || modes.size() > 2)
    throw ConfigError("model requires one or two mechanical modes");
  if (decoherence.gamma() <= 0.0) throw ConfigError("gamma_g + gamma_e must be positive");
  if (decoherence.gamma_g < 0.0 || decoherence.gamma_e < 0.0 || decoherence.big_gamma < 0.0 ||
      decoherence.gamma_phi < 0.0)
    throw ConfigError("decoherence rates must be >= 0");
  for (const auto& m : modes) {
    if (m.nu <= 0.0) throw ConfigError("mode frequency nu must be positive");
    if (m.q_factor <= 0.0) throw ConfigError("q_factor must be positive");
    if (m.n_initial < 0.0) throw ConfigError("n_initial must be >= 0");
    m.resolved_n_max();  // throws on invalid values
  }
}

DensityMatrix DensityMatrix::from_matrix(const DenseMatrix& rho) {
  DensityMatrix out;
  out.dim = static_cast<int>(rho.rows());
  out.vec = linop::stack(rho);
  return out;
}

double DensityMatrix::trace_defect() const {
  cdouble tr = 0.0;
  for (int i = 0; i < dim; ++i) tr += vec[static_cast<Eigen::Index>(i) * dim + i];
  return std::abs(tr - 1.0);
}

double DensityMatrix::hermiticity_defect() const {
  double defect = 0.0;
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i <= j; ++i) {
      const cdouble upper = vec[static_cast<Eigen::Index>(j) * dim + i];
      const cdouble lower = vec[static_cast<Eigen::Index>(i) * dim + j];
      defect = std::max(defect, std::abs(upper - std::conj(lower)));
    }
  return defect;
}

double DensityMatrix::min_eigenvalue() const {
  DenseMatrix rho = matrix();
  DenseMatrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

struct IndexLayout {
  // Strides for decomposing a global basis index into (qubit, n_1[, n_2]).
  std::vector<int> mode_dims;
  std::vector<int> mode_strides;
  int qubit_stride = 1;

  explicit IndexLayout(const ModelSpec& spec) {
    for (const auto& m : spec.modes) mode_dims.push_back(m.resolved_n_max() + 1);
    mode_strides.assign(mode_dims.size(), 1);
    for (int k = static_cast<int>(mode_dims.size()) - 2; k >= 0; --k)
      mode_strides[k] = mode_strides[k + 1] * mode_dims[k + 1];
    qubit_stride = mode_strides.empty() ? 1 : mode_strides[0] * mode_dims[0];
  }

  int qubit_of(int idx) const { return idx / qubit_stride; }
  int mode_occupation(int idx, int k) const {
    return (idx % qubit_stride) / mode_strides[k] % mode_dims[k];
  }
};

}  // namespace

Observables observables(const ModelSpec& spec, const Vector& rho_vec) {
  const int dim = spec.hilbert_dim();
  if (rho_vec.size() != static_cast<Eigen::Index>(dim) * dim)
    throw ConfigError("observables: state size does not match model");
  const IndexLayout layout(spec);
  Observables obs;
  obs.mean_n.assign(spec.modes.size(), 0.0);
  cdouble trace = 0.0;
  for (int i = 0; i < dim; ++i) {
    const cdouble p = rho_vec[static_cast<Eigen::Index>(i) * dim + i];
    trace += p;
    const double pr = p.real();
    switch (layout.qubit_of(i)) {
      case kLevelG: obs.pop_g += pr; break;
      case kLevelE: obs.pop_e += pr; break;
      default: obs.pop_a += pr; break;
    }
    for (std::size_t k = 0; k < spec.modes.size(); ++k)
      obs.mean_n[k] += pr * layout.mode_occupation(i, static_cast<int>(k));
  }
  obs.trace_re = trace.real();
  obs.trace_defect = std::abs(trace - 1.0);
  return obs;
}

std::vector<RealVector> mode_marginals(const ModelSpec& spec, const Vector& rho_vec) {
  const int dim = spec.hilbert_dim();
  if (rho_vec.size() != static_cast<Eigen::Index>(dim) * dim)
    throw ConfigError("mode_marginals: state size does not match model");
  const IndexLayout layout(spec);
  std::vector<RealVector> out;
  for (const auto& m : spec.modes) out.push_back(RealVector::Zero(m.resolved_n_max() + 1));
  for (int i = 0; i < dim; ++i) {
    const double p = rho_vec[static_cast<Eigen::Index>(i) * dim + i].real();
    for (std::size_t k = 0; k < spec.modes.size(); ++k)
      out[k][layout.mode_occupation(i, static_cast<int>(k))] += p;
  }
  return out;
}

ThermalState thermal_state(double n_bar, int n_max) {
  if (n_bar < 0.0) throw ConfigError("thermal_state requires n_bar >= 0");
  if (n_max < 1) throw ConfigError("thermal_state requires n_max >= 1");
  ThermalState out;
  out.populations = RealVector::Zero(n_max + 1);
  if (n_bar == 0.0) {
    out.populations[0] = 1.0;
    return out;
  }
  const double q = n_bar / (n_bar + 1.0);
  double w = 1.0;
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    out.populations[n] = w;
    sum += w;
    w *= q;
  }
  // Geometric series tail, exact: sum_{n>n_max} q^n * (1-q).
  out.tail_mass = std::pow(q, n_max + 1);
  out.tail_warning = out.tail_mass > 1e-3;
  out.populations /= sum;
  return out;
}

DensityMatrix initial_state(const ModelSpec& spec) {
  spec.validate();
  const IndexLayout layout(spec);
  const int dim = spec.hilbert_dim();
  std::vector<RealVector> thermals;
  for (const auto& m : spec.modes)
    thermals.push_back(thermal_state(m.n_initial, m.resolved_n_max()).populations);

  DensityMatrix rho;
  rho.dim = dim;
  rho.vec = Vector::Zero(static_cast<Eigen::Index>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    if (layout.qubit_of(i) != kLevelG) continue;
    double p = 1.0;
    for (std::size_t k = 0; k < spec.modes.size(); ++k)
      p *= thermals[k][layout.mode_occupation(i, static_cast<int>(k))];
    rho.vec[static_cast<Eigen::Index>(i) * dim + i] = p;
  }
  return rho;
}

}  // namespace eitcool::lindblad
