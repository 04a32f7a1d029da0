// Copyright 2026 The dfslab Authors
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

#include "dfslab/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "dfslab/errors.hpp"

namespace dfslab {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_real(const std::string& tok, const std::string& source, int line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(source, line, -1, "", "expected a real number, got '" + tok + "'");
  }
  return value;
}

long parse_count(const std::string& tok, const std::string& source, int line) {
  long value = 0;
  const char* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), last, value);
  if (ec != std::errc() || ptr != last || value <= 0) {
    throw ConfigError(source, line, -1, "", "expected a positive integer, got '" + tok + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc()) throw Error("format_real: conversion failed");
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& os, const ComplexMatrix& m, const std::string& name) {
  if (!name.empty()) os << "name " << name << '\n';
  os << "matrix " << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << format_real(m(i, j).real()) << ' ' << format_real(m(i, j).imag());
    }
    os << '\n';
  }
}

void write_matrices(std::ostream& os, const std::vector<NamedMatrix>& matrices) {
  for (const NamedMatrix& nm : matrices) write_matrix(os, nm.matrix, nm.name);
}

std::vector<NamedMatrix> read_matrices(std::istream& is, const std::string& source) {
  std::vector<NamedMatrix> out;
  std::string pending_name;
  std::string line;
  int line_no = -1;
  while (std::getline(is, line)) {
    ++line_no;
    const std::vector<std::string> toks = split_ws(line);
    if (toks.empty() || toks.front().starts_with('#')) continue;
    if (toks.front() == "name") {
      if (toks.size() != 2) throw ConfigError(source, line_no, -1, "name", "expected 'name <label>'");
      pending_name = toks[1];
      continue;
    }
    if (toks.front() != "matrix" || toks.size() != 3) {
      throw ConfigError(source, line_no, -1, "", "expected 'matrix <rows> <cols>'");
    }
    const long rows = parse_count(toks[1], source, line_no);
    const long cols = parse_count(toks[2], source, line_no);
    if (static_cast<std::size_t>(rows) > kMaxDimension ||
        static_cast<std::size_t>(cols) > kMaxDimension) {
      throw ConfigError(source, line_no, -1, "matrix", "dimension exceeds the supported maximum");
    }
    ComplexMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r) {
      std::string row_line;
      std::vector<std::string> row;
      while (row.empty() && std::getline(is, row_line)) {
        ++line_no;
        row = split_ws(row_line);
        if (!row.empty() && row.front().starts_with('#')) row.clear();
      }
      if (row.empty()) throw ConfigError(source, line_no, -1, "matrix", "unexpected end of input");
      if (static_cast<long>(row.size()) != 2 * cols) {
        std::ostringstream os;
        os << "row " << r << " has " << row.size() << " numbers, expected " << 2 * cols;
        throw ConfigError(source, line_no, -1, "matrix", os.str());
      }
      for (long c = 0; c < cols; ++c) {
        m(r, c) = Complex(parse_real(row[2 * c], source, line_no),
                          parse_real(row[2 * c + 1], source, line_no));
      }
    }
    out.push_back({pending_name, std::move(m)});
    pending_name.clear();
  }
  return out;
}

std::vector<NamedMatrix> read_matrices_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, -1, -1, "", "cannot open file");
  return read_matrices(in, path);
}

ComplexMatrix read_matrix(std::istream& is, const std::string& source) {
  std::vector<NamedMatrix> all = read_matrices(is, source);
  if (all.size() != 1) {
    throw ConfigError(source, -1, -1, "", "expected exactly one matrix, found " +
                                              std::to_string(all.size()));
  }
  return std::move(all.front().matrix);
}

}  // namespace dfslab
