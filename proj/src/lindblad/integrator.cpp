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

#include "lindblad/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace eitcool::lindblad {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b_i - bhat_i, for the embedded 4th-order error estimate.
constexpr double e1 = b1 - 5179.0 / 57600;
constexpr double e3 = b3 - 7571.0 / 16695;
constexpr double e4 = b4 - 393.0 / 640;
constexpr double e5 = b5 + 92097.0 / 339200;
constexpr double e6 = b6 - 187.0 / 2100;
constexpr double e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

}  // namespace

DormandPrince::DormandPrince(Rhs rhs, IntegratorOptions opts)
    : rhs_(std::move(rhs)), opts_(opts) {}

void DormandPrince::reset(double t, Vector y) {
  t_ = t;
  y_ = std::move(y);
  h_ = opts_.initial_step;
  k1_valid_ = false;
}

double DormandPrince::step(double t_limit) {
  if (t_ >= t_limit) return 0.0;
  if (!k1_valid_) {
    k1_ = rhs_(t_, y_);
    ++stats_.rhs_evaluations;
    k1_valid_ = true;
  }

  const double span = t_limit - t_;
  double h = std::min({h_, opts_.max_step, span});
  // Smallest step we consider meaningful relative to the current time scale.
  const double h_floor = 1e-14 * std::max(1.0, std::abs(t_)) + 1e-300;

  while (true) {
    if (stats_.accepted + stats_.rejected >= opts_.max_steps)
      throw NumericalError("integrator exceeded max_steps");
    if (h < h_floor)
      throw NumericalError("integrator step size underflow (stiff problem or tolerance unreachable)");

    Vector k2 = rhs_(t_ + c2 * h, y_ + h * (a21 * k1_));
    Vector k3 = rhs_(t_ + c3 * h, y_ + h * (a31 * k1_ + a32 * k2));
    Vector k4 = rhs_(t_ + c4 * h, y_ + h * (a41 * k1_ + a42 * k2 + a43 * k3));
    Vector k5 = rhs_(t_ + c5 * h, y_ + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4));
    Vector k6 = rhs_(t_ + h, y_ + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Vector y_new = y_ + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Vector k7 = rhs_(t_ + h, y_new);
    stats_.rhs_evaluations += 6;

    Vector err = h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double sum = 0.0;
    const Eigen::Index n = y_.size();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double scale =
          opts_.atol + opts_.rtol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
      const double q = std::abs(err[i]) / scale;
      sum += q * q;
    }
    const double err_norm = std::sqrt(sum / static_cast<double>(n));

    if (!std::isfinite(err_norm)) throw NumericalError("integrator produced non-finite state");

    if (err_norm <= 1.0) {
      const double taken = h;
      t_ += h;
      y_ = std::move(y_new);
      k1_ = std::move(k7);  // FSAL
      ++stats_.accepted;
      double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
      h_ = h * std::clamp(factor, 0.2, 5.0);
      return taken;
    }

    ++stats_.rejected;
    double factor = 0.9 * std::pow(err_norm, -0.2);
    h *= std::clamp(factor, 0.1, 0.9);
    h_ = h;
  }
}

void DormandPrince::advance_to(double t_limit) {
  while (t_ < t_limit) step(t_limit);
}

Vector integrate_to(const Rhs& rhs, double t0, const Vector& y0, double t1,
                    const IntegratorOptions& opts, IntegratorStats* stats) {
  DormandPrince stepper(rhs, opts);
  stepper.reset(t0, y0);
  stepper.advance_to(t1);
  if (stats != nullptr) *stats = stepper.stats();
  return stepper.state();
}

}  // namespace eitcool::lindblad
