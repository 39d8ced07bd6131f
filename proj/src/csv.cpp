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

#include "infobid/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace infobid {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<double> parse_row(std::string_view line, std::size_t row) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    std::string_view field = trim(line.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos));
    if (field.empty()) throw CsvError(row, "empty field");
    if (field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
      throw CsvError(row, "cannot parse '" + std::string(field) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return values;
}

template <typename RowFn>
void for_each_row(std::istream& in, RowFn&& fn) {
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    fn(parse_row(line, row), row);
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Dataset read_dataset(std::istream& in, bool has_label) {
  Dataset data;
  std::size_t width = 0;
  for_each_row(in, [&](std::vector<double> values, std::size_t row) {
    if (width == 0) {
      width = values.size();
      if (has_label && width < 2)
        throw CsvError(row, "labelled rows need at least one feature");
    } else if (values.size() != width) {
      throw CsvError(row, "expected " + std::to_string(width) +
                              " columns, got " + std::to_string(values.size()));
    }
    std::optional<int> label;
    if (has_label) {
      const double y = values.back();
      if (y != 0.0 && y != 1.0)
        throw CsvError(row, "label must be 0 or 1");
      label = static_cast<int>(y);
      values.pop_back();
    }
    Vector x = Eigen::Map<const Vector>(values.data(),
                                        static_cast<Eigen::Index>(values.size()));
    if (!x.allFinite()) throw CsvError(row, "non-finite feature");
    data.add(std::move(x), label);
  });
  return data;
}

Dataset load_csv(const std::filesystem::path& path, bool has_label) {
  auto in = open_in(path);
  return read_dataset(in, has_label);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  for (const auto& s : data) {
    for (Eigen::Index j = 0; j < s.features.size(); ++j) {
      if (j) out << ',';
      out << format_real(s.features[j]);
    }
    if (s.label) out << ',' << *s.label;
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
  auto out = open_out(path);
  write_dataset(out, data);
}

void write_matrix_csv(const std::filesystem::path& path, const RowMatrix& m) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
}

RowMatrix load_matrix_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  Dataset d = read_dataset(in, false);
  return d.feature_matrix();
}

struct TableWriter::Impl {
  std::ofstream out;
  bool row_started = false;
};

TableWriter::TableWriter(const std::filesystem::path& path,
                         const std::vector<std::string>& columns)
    : impl_(std::make_unique<Impl>(Impl{open_out(path)})) {
  for (std::size_t i = 0; i < columns.size(); ++i)
    impl_->out << (i ? "," : "") << columns[i];
  impl_->out << '\n';
}

TableWriter::~TableWriter() = default;

TableWriter& TableWriter::cell(double v) { return cell(format_real(v)); }

TableWriter& TableWriter::cell(long long v) {
  return cell(std::to_string(v));
}

TableWriter& TableWriter::cell(const std::string& v) {
  if (impl_->row_started) impl_->out << ',';
  impl_->out << v;
  impl_->row_started = true;
  return *this;
}

void TableWriter::end_row() {
  impl_->out << '\n';
  impl_->row_started = false;
}

}  // namespace infobid
