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

#include "io/emit.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace eitcool::io {

Cell::Cell(double v) {
  if (!std::isfinite(v)) throw NumericalError("refusing to emit non-finite value");
  text_ = format_sig12(v);
}

Cell::Cell(const std::string& text) : text_(text) {
  if (text.find(',') != std::string::npos || text.find('\n') != std::string::npos)
    throw ConfigError("CSV cells must not contain commas or newlines");
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw ConfigError("CSV table requires a header");
}

void CsvTable::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size())
    throw ConfigError("CSV row width does not match the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::serialize() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i > 0) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += row[i].text();
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write to '" + tmp + "'");
    out << contents;
    if (!out) throw ConfigError("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot rename '" + tmp + "' to '" + path + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty() || dir == ".") return file;
  return (std::filesystem::path(dir) / file).string();
}

void ensure_directory(const std::string& dir) {
  if (dir.empty() || dir == ".") return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

}  // namespace eitcool::io
