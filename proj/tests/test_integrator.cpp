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

#include <doctest.h>

#include <cmath>

#include "lindblad/integrator.hpp"

using namespace eitcool;
using lindblad::DormandPrince;
using lindblad::IntegratorOptions;

TEST_CASE("adaptive stepper reproduces exponential decay") {
  IntegratorOptions opts;
  const double lambda = 0.37;
  auto rhs = [lambda](double, const Vector& y) { return Vector(-lambda * y); };

  Vector y0(1);
  y0[0] = 2.0;
  const Vector y = lindblad::integrate_to(rhs, 0.0, y0, 5.0, opts);
  CHECK(std::abs(y[0].real() - 2.0 * std::exp(-lambda * 5.0)) < 1e-8);
}

TEST_CASE("adaptive stepper tracks oscillatory dynamics to tolerance") {
  IntegratorOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-12;
  const double omega = 3.0;
  auto rhs = [omega](double, const Vector& y) { return Vector(kI * omega * y); };

  Vector y0(1);
  y0[0] = 1.0;
  const double t_end = 20.0;
  const Vector y = lindblad::integrate_to(rhs, 0.0, y0, t_end, opts);
  CHECK(std::abs(y[0] - std::exp(kI * omega * t_end)) < 1e-7);
  CHECK(std::abs(std::abs(y[0]) - 1.0) < 1e-8);
}

TEST_CASE("stepper lands exactly on requested grid points") {
  IntegratorOptions opts;
  auto rhs = [](double, const Vector& y) { return Vector(-y); };
  DormandPrince stepper(rhs, opts);
  Vector y0(1);
  y0[0] = 1.0;
  stepper.reset(0.0, y0);

  for (double t : {0.1, 0.25, 1.0, 4.5}) {
    stepper.advance_to(t);
    CHECK(stepper.time() == t);
  }
  CHECK(std::abs(stepper.state()[0].real() - std::exp(-4.5)) < 1e-8);
}

TEST_CASE("non-finite right-hand sides are detected") {
  IntegratorOptions opts;
  auto rhs = [](double, const Vector& y) {
    Vector out = y;
    out[0] = cdouble(std::numeric_limits<double>::quiet_NaN(), 0.0);
    return out;
  };
  Vector y0(1);
  y0[0] = 1.0;
  CHECK_THROWS_AS(lindblad::integrate_to(rhs, 0.0, y0, 1.0, opts), NumericalError);
}

TEST_CASE("step budget is enforced") {
  IntegratorOptions opts;
  opts.max_steps = 10;
  opts.max_step = 1e-6;  // forces far more than 10 steps for the span
  auto rhs = [](double, const Vector& y) { return Vector(-y); };
  Vector y0(1);
  y0[0] = 1.0;
  CHECK_THROWS_AS(lindblad::integrate_to(rhs, 0.0, y0, 1.0, opts), NumericalError);
}
