// Copyright 2026 The Authors.
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

// Dense CSV: comma-separated reals, optional trailing integer label, one row
// per line, no header. Reals are written with 17 significant digits so a
// write/read cycle is bit-exact.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "infobid/model.hpp"

namespace infobid {

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t row, const std::string& msg)
      : std::runtime_error("csv row " + std::to_string(row) + ": " + msg),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

Dataset read_dataset(std::istream& in, bool has_label);
Dataset load_csv(const std::filesystem::path& path, bool has_label);

void write_dataset(std::ostream& out, const Dataset& data);
void write_csv(const std::filesystem::path& path, const Dataset& data);

// One row per matrix row; used for gradient banks.
void write_matrix_csv(const std::filesystem::path& path, const RowMatrix& m);
RowMatrix load_matrix_csv(const std::filesystem::path& path);

std::string format_real(double v);

/// Small helper for result tables (these do carry a header row).
class TableWriter {
 public:
  TableWriter(const std::filesystem::path& path,
              const std::vector<std::string>& columns);
  ~TableWriter();
  TableWriter(const TableWriter&) = delete;
  TableWriter& operator=(const TableWriter&) = delete;

  TableWriter& cell(double v);
  TableWriter& cell(long long v);
  TableWriter& cell(const std::string& v);
  TableWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  TableWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
  void end_row();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace infobid
