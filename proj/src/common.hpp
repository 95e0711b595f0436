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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace eitcool {

using cdouble = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cdouble>;
using Triplet = Eigen::Triplet<cdouble>;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cdouble kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

// All internal rates and frequencies are expressed in units of the total
// qubit relaxation rate gamma = gamma_g + gamma_e; times in 1/gamma.
// SI annotation uses this reference value for gamma.
inline constexpr double kGammaSI = 2.0 * kPi * 100.0e6;  // rad/s

// Physical constants (SI).
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J/K
inline constexpr double kFluxQuantum = 2.067833848e-15;  // Wb

// Invalid user-facing input: bad config keys, out-of-range parameters,
// malformed files. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: non-finite results, solver breakdown, integrator
// stiffness, convergence gate violations. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worker cap for trajectory ensembles and sweep loops. Reads EITCOOL_THREADS
// once; values < 1 or unset fall back to hardware concurrency.
int worker_thread_count();

// Bose-Einstein occupation of a mode at angular frequency nu_rad_s and
// temperature t_kelvin.
double bose_occupation(double nu_rad_s, double t_kelvin);

// snprintf-based "%.12g" formatting used by every emitter, so CSV output is
// byte-stable across runs and platforms.
std::string format_sig12(double v);

}  // namespace eitcool
