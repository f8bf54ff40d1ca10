// Copyright 2026 The idface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "idface/template_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "idface/error.hpp"

namespace idface::transform {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_templates(std::ostream& out, const std::vector<FeatureTemplate>& templates) {
  char buf[32];
  for (const auto& t : templates) {
    for (std::size_t i = 0; i < t.dim(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", t[i]);
      if (i) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) fail(ErrorCode::kIoFailure, "write failed");
}

std::vector<FeatureTemplate> read_templates(std::istream& in) {
  std::vector<FeatureTemplate> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> values;
    for (const auto& raw : split_commas(line)) {
      const std::string f = trim(raw);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        fail(ErrorCode::kIoFailure, "line " + std::to_string(lineno) + ": bad number '" + f + "'");
      }
      values.push_back(v);
    }
    if (!out.empty() && values.size() != out.front().dim()) {
      fail(ErrorCode::kDimensionMismatch, "line " + std::to_string(lineno) + ": dimension differs");
    }
    out.emplace_back(std::move(values));
  }
  return out;
}

void write_templates_file(const std::string& path, const std::vector<FeatureTemplate>& templates) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoFailure, "cannot open " + path + " for writing");
  write_templates(out, templates);
}

std::vector<FeatureTemplate> read_templates_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open " + path);
  return read_templates(in);
}

std::string format_ternary(const TernaryTemplate& z) {
  std::string s;
  s.reserve(z.dim() * 3);
  for (std::size_t i = 0; i < z.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(z[i]);
  }
  return s;
}

TernaryTemplate parse_ternary(const std::string& line) {
  std::vector<std::int8_t> values;
  for (const auto& raw : split_commas(trim(line))) {
    const std::string f = trim(raw);
    if (f == "1" || f == "+1") {
      values.push_back(1);
    } else if (f == "-1") {
      values.push_back(-1);
    } else if (f == "0") {
      values.push_back(0);
    } else {
      fail(ErrorCode::kIoFailure, "bad ternary entry '" + f + "'");
    }
  }
  return TernaryTemplate(std::move(values));
}

}  // namespace idface::transform
