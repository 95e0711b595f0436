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

#include <string>
#include <vector>

#include "io/config.hpp"
#include "lindblad/model.hpp"

namespace eitcool::io {

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {
      "qubit", "spectrum", "rates", "cool", "steady", "sweep", "twomode", "converge"};
  return names;
}

struct RunResult {
  std::string summary_json;
  std::vector<std::string> files_written;
};

// Executes one subcommand: expands the preset, builds the model, runs the
// requested engines and writes `<subcommand>_<hash>.csv` plus a JSON summary
// into out_dir. The hash covers the configuration before preset expansion.
RunResult run_subcommand(const std::string& subcommand, RunConfig cfg,
                         const std::string& out_dir);

// Model assembly from a flat configuration; exposed for tests.
lindblad::ModelSpec model_from_config(const RunConfig& cfg);

}  // namespace eitcool::io
