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

#include "common.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace eitcool {

int worker_thread_count() {
  static const int cached = [] {
    const char* env = std::getenv("EITCOOL_THREADS");
    if (env != nullptr) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 1) return static_cast<int>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return cached;
}

double bose_occupation(double nu_rad_s, double t_kelvin) {
  if (t_kelvin <= 0.0) return 0.0;
  const double x = kHbar * nu_rad_s / (kBoltzmann * t_kelvin);
  return 1.0 / std::expm1(x);
}

std::string format_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace eitcool
