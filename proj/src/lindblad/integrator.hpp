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

#include <functional>
#include <limits>

#include "common.hpp"

namespace eitcool::lindblad {

struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 1e-3;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 200'000'000;
};

struct IntegratorStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
};

using Rhs = std::function<Vector(double, const Vector&)>;

// Dormand-Prince 5(4) embedded Runge-Kutta pair with PI-free standard step
// control. Step-size underflow (stiff problem or unreachable tolerance) and
// non-finite states raise NumericalError.
class DormandPrince {
 public:
  DormandPrince(Rhs rhs, IntegratorOptions opts);

  void reset(double t, Vector y);
  double time() const { return t_; }
  const Vector& state() const { return y_; }
  const IntegratorStats& stats() const { return stats_; }

  // Upper bound for the next attempted step; callers may tighten this
  // between steps (e.g. to cap per-step jump probability).
  void set_max_step(double h) { opts_.max_step = h; }

  // One accepted step, clipped so time() never exceeds t_limit.
  // Returns the step size taken (0 if already at t_limit).
  double step(double t_limit);

  // Repeated step() until time() == t_limit.
  void advance_to(double t_limit);

 private:
  Rhs rhs_;
  IntegratorOptions opts_;
  double t_ = 0.0;
  double h_ = 0.0;
  Vector y_;
  Vector k1_;
  bool k1_valid_ = false;
  IntegratorStats stats_;
};

// Single-shot convenience wrapper.
Vector integrate_to(const Rhs& rhs, double t0, const Vector& y0, double t1,
                    const IntegratorOptions& opts, IntegratorStats* stats = nullptr);

}  // namespace eitcool::lindblad
