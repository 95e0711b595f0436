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

// Command-line front end. Links only against the public C API.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eitcool/eitcool.h"

namespace {

int status_to_exit_code(eitcool_status status) {
  switch (status) {
    case EITCOOL_OK: return 0;
    case EITCOOL_ERR_CONFIG: return 2;
    case EITCOOL_ERR_NUMERICAL: return 3;
    default: return 3;
  }
}

struct Options {
  std::string subcommand;
  std::string config_file;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  std::string engine;
  long long seed = -1;
};

int run(const Options& opt) {
  eitcool_run* run = nullptr;
  if (eitcool_run_create(&run) != EITCOOL_OK) {
    std::fprintf(stderr, "error: failed to allocate run handle\n");
    return 3;
  }

  eitcool_status status = EITCOOL_OK;
  auto step = [&](eitcool_status s) {
    if (status == EITCOOL_OK && s != EITCOOL_OK) status = s;
    return status == EITCOOL_OK;
  };

  do {
    if (!opt.config_file.empty() &&
        !step(eitcool_run_load_config(run, opt.config_file.c_str())))
      break;
    bool ok = true;
    for (const auto& assignment : opt.overrides) {
      const std::size_t eq = assignment.find('=');
      if (eq == std::string::npos || eq == 0) {
        std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", assignment.c_str());
        eitcool_run_destroy(run);
        return 2;
      }
      if (!step(eitcool_run_set(run, assignment.substr(0, eq).c_str(),
                                assignment.substr(eq + 1).c_str()))) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    if (!opt.engine.empty() && !step(eitcool_run_set(run, "engine", opt.engine.c_str()))) break;
    if (opt.seed >= 0 &&
        !step(eitcool_run_set(run, "seed", std::to_string(opt.seed).c_str())))
      break;
    if (!step(eitcool_run_set_output_dir(run, opt.out_dir.c_str()))) break;
    step(eitcool_run_execute(run, opt.subcommand.c_str()));
  } while (false);

  if (status == EITCOOL_OK) {
    std::fputs(eitcool_run_summary(run), stdout);
  } else {
    std::fprintf(stderr, "error: %s\n", eitcool_run_error(run));
  }
  const int code = status_to_exit_code(status);
  eitcool_run_destroy(run);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EIT ground-state cooling simulator for a flux qubit coupled to "
               "nanomechanical modes"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_file, "JSON or key=value configuration file")
      ->group("Global");
  app.add_option("--set", opt.overrides, "Override one configuration key (key=value)")
      ->group("Global");
  app.add_option("--out", opt.out_dir, "Output directory (default: current directory)")
      ->group("Global");
  app.add_option("--seed", opt.seed, "Random seed for trajectory ensembles")->group("Global");
  app.add_option("--engine", opt.engine, "Computation engine: analytic, me or traj")
      ->group("Global");

  // fallthrough lets the global options above appear after the subcommand
  // name, which is the natural order on the command line.
  app.add_subcommand("qubit", "Circuit-level flux-qubit spectrum and couplings")->fallthrough();
  app.add_subcommand("spectrum", "Weak-probe absorption spectrum of the g-a transition")
      ->fallthrough();
  app.add_subcommand("rates", "Analytic sideband cooling and heating rates")->fallthrough();
  app.add_subcommand("cool", "Time evolution of the mode occupation")->fallthrough();
  app.add_subcommand("steady", "Steady state of the full master equation")->fallthrough();
  app.add_subcommand("sweep", "Cooling limit versus bath occupation or detuning")->fallthrough();
  app.add_subcommand("twomode", "Simultaneous cooling of two mechanical modes")->fallthrough();
  app.add_subcommand("converge", "Steady-state occupation versus Fock truncation")
      ->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // CLI11 reserves its own exit codes; fold parse failures into the
    // configuration-error convention, keeping 0 for --help.
    return code == 0 ? 0 : 2;
  }

  opt.subcommand = app.get_subcommands().front()->get_name();
  return run(opt);
}
