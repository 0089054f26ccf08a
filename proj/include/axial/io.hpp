// Copyright 2026 The axial-sampler Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "axial/error.hpp"
#include "axial/spectral.hpp"

namespace axial::io {

enum class MatrixFormat { Csv, Json };

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
    throw Error(ErrorCode::ParseError, "not a number: '" + std::string(field) + "'");
  return value;
}

/// Comma-separated list of reals, e.g. "1,0,0".
inline std::vector<double> parse_vector(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(parse_double(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// p lines of p comma-separated values, no header. Blank lines are ignored.
inline std::vector<std::vector<double>> parse_csv_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(parse_vector(line));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "empty matrix");
  return rows;
}

/// {"matrix": [[...], [...], ...]}
inline std::vector<std::vector<double>> parse_json_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array())
    throw Error(ErrorCode::ParseError, "expected an object with a \"matrix\" array");
  std::vector<std::vector<double>> rows;
  for (const auto& row : doc["matrix"]) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "matrix rows must be arrays");
    auto& out = rows.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number()) throw Error(ErrorCode::ParseError, "matrix entries must be numbers");
      out.push_back(v.get<double>());
    }
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "empty matrix");
  return rows;
}

inline MatrixFormat format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".json" ? MatrixFormat::Json : MatrixFormat::Csv;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline SymmetricMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  const std::string text = read_file(path);
  return ingest_matrix(format == MatrixFormat::Json ? parse_json_matrix(text)
                                                    : parse_csv_matrix(text));
}

inline SymmetricMatrix load_matrix(const std::filesystem::path& path) {
  return load_matrix(path, format_from_path(path));
}

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

}  // namespace axial::io
