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

#include "eitcool/eitcool.h"

#include <new>
#include <string>

#include "io/runner.hpp"

struct eitcool_run {
  eitcool::io::RunConfig config;
  std::string output_dir = ".";
  std::string summary;
  std::string error;
};

namespace {

eitcool_status guarded(eitcool_run* run, auto&& body) {
  if (run == nullptr) return EITCOOL_ERR_INVALID_ARGUMENT;
  run->error.clear();
  try {
    body();
    return EITCOOL_OK;
  } catch (const eitcool::ConfigError& e) {
    run->error = e.what();
    return EITCOOL_ERR_CONFIG;
  } catch (const eitcool::NumericalError& e) {
    run->error = e.what();
    return EITCOOL_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    run->error = e.what();
    return EITCOOL_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

eitcool_status eitcool_run_create(eitcool_run** out) {
  if (out == nullptr) return EITCOOL_ERR_INVALID_ARGUMENT;
  *out = new (std::nothrow) eitcool_run();
  return *out != nullptr ? EITCOOL_OK : EITCOOL_ERR_INTERNAL;
}

void eitcool_run_destroy(eitcool_run* run) { delete run; }

eitcool_status eitcool_run_load_config(eitcool_run* run, const char* path) {
  if (path == nullptr) return EITCOOL_ERR_INVALID_ARGUMENT;
  return guarded(run, [&] {
    const eitcool::io::RunConfig loaded = eitcool::io::load_config_file(path);
    for (const auto& [key, value] : loaded.entries()) run->config.set(key, value);
  });
}

eitcool_status eitcool_run_set(eitcool_run* run, const char* key, const char* value) {
  if (key == nullptr || value == nullptr) return EITCOOL_ERR_INVALID_ARGUMENT;
  return guarded(run, [&] { run->config.set(key, value); });
}

eitcool_status eitcool_run_set_output_dir(eitcool_run* run, const char* dir) {
  if (dir == nullptr) return EITCOOL_ERR_INVALID_ARGUMENT;
  return guarded(run, [&] { run->output_dir = dir; });
}

eitcool_status eitcool_run_execute(eitcool_run* run, const char* subcommand) {
  if (subcommand == nullptr) return EITCOOL_ERR_INVALID_ARGUMENT;
  return guarded(run, [&] {
    const eitcool::io::RunResult result =
        eitcool::io::run_subcommand(subcommand, run->config, run->output_dir);
    run->summary = result.summary_json;
  });
}

const char* eitcool_run_summary(const eitcool_run* run) {
  return run != nullptr ? run->summary.c_str() : "";
}

const char* eitcool_run_error(const eitcool_run* run) {
  return run != nullptr ? run->error.c_str() : "";
}

const char* eitcool_version(void) { return "1.0.0"; }

}  // extern "C"
