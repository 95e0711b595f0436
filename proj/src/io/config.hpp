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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "common.hpp"

namespace eitcool::io {

// Flat key/value run configuration. Keys are validated against the schema on
// every insertion; unknown keys are reported by name. Values are kept as the
// raw strings so the canonical hash is independent of parsing.
class RunConfig {
 public:
  static const std::set<std::string>& known_keys();

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

  // FNV-1a over the sorted "key=value" lines; used for output file names.
  std::string canonical_hash() const;

 private:
  std::map<std::string, std::string> kv_;
};

// Reads a JSON object ({"key": value, ...}) or an INI-style key=value file;
// the format is detected from the first non-blank character.
RunConfig load_config_file(const std::string& path);

// Expands a named parameter preset into cfg, without overriding keys the
// user has already set explicitly.
void apply_preset(RunConfig& cfg, const std::string& preset);

// "key=value" splitter for command-line overrides.
std::pair<std::string, std::string> split_override(const std::string& assignment);

}  // namespace eitcool::io
