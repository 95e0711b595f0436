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

#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace eitcool::io {

// One CSV cell: a computed number (formatted to 12 significant digits), a
// verbatim string, or empty for "not computed".
class Cell {
 public:
  Cell() = default;
  Cell(double v);                 // NOLINT(google-explicit-constructor)
  Cell(const std::string& text);  // NOLINT(google-explicit-constructor)
  Cell(const char* text) : Cell(std::string(text)) {}
  Cell(int v) : Cell(static_cast<double>(v)) {}

  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

// In-memory CSV table. Numeric cells must be finite; non-finite values throw
// NumericalError at insertion, so nothing is written for poisoned runs.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<Cell> row);
  std::string serialize() const;
  std::size_t row_count() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

// Writes atomically (temp file + rename) so partial output never appears
// under the final name.
void write_file(const std::string& path, const std::string& contents);

std::string join_path(const std::string& dir, const std::string& file);
void ensure_directory(const std::string& dir);

}  // namespace eitcool::io
