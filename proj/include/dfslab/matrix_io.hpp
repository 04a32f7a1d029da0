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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dfslab/numeric.hpp"

namespace dfslab {

/// Formats a real number with 17 significant digits, '.' as decimal separator, no locale.
[[nodiscard]] std::string format_real(double x);

/// A matrix with an optional name, as stored in the shared matrix text format.
struct NamedMatrix {
  std::string name;
  ComplexMatrix matrix;
};

/// Matrix text format:
///
///     # comment lines and blank lines are ignored
///     name <label>                (optional, applies to the next matrix)
///     matrix <rows> <cols>
///     <re> <im> <re> <im> ...     (one line per row, 2*cols numbers)
///
/// Several matrices may follow each other in one stream (generator sets, groups).
void write_matrix(std::ostream& os, const ComplexMatrix& m, const std::string& name = {});
void write_matrices(std::ostream& os, const std::vector<NamedMatrix>& matrices);

/// Reads every matrix in the stream; `source` names the stream in error messages.
[[nodiscard]] std::vector<NamedMatrix> read_matrices(std::istream& is,
                                                     const std::string& source = "<stream>");
[[nodiscard]] std::vector<NamedMatrix> read_matrices_file(const std::string& path);

/// Reads exactly one matrix.
[[nodiscard]] ComplexMatrix read_matrix(std::istream& is, const std::string& source = "<stream>");

}  // namespace dfslab
