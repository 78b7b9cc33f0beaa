// Copyright 2026 The gibbsmaj Authors
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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gibbsmaj/linalg.hpp"
#include "gibbsmaj/thermodynamics.hpp"

namespace gibbsmaj::io {

using Json = nlohmann::json;

/// Malformed or inconsistent input; the CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"n": n, "matrix": [[[re, im], ...], ...], "label": "..."}
struct MatrixDocument {
  ComplexMatrix matrix;
  std::optional<std::string> label;

  std::size_t n() const { return matrix.rows(); }
};

/// {"n": n, "vector": [x_1, ...], "label": "..."}
struct VectorDocument {
  std::vector<double> values;
  std::optional<std::string> label;
};

MatrixDocument parse_matrix(const Json& j, const std::string& context = "matrix");
Json to_json(const MatrixDocument& doc);
VectorDocument parse_vector(const Json& j, const std::string& context = "vector");
Json to_json(const VectorDocument& doc);

/// Hermitian view of a parsed matrix; InputError names the context on failure.
HermitianMatrix require_hermitian(const MatrixDocument& doc, const std::string& context);

/// A number, or the string "inf".
Temperature parse_temperature(const Json& j);
Json to_json(Temperature t);

/// {"breakpoints": [...], "values": [...]} or a bare number.
PiecewiseConstant parse_piecewise(const Json& j, const std::string& context);

/// {"hamiltonian": M, "temperature": T, "gamma": g, "controls": [{"hamiltonian": M, "u": f}],
///  "dissipators": [M, ...]}. Without "dissipators" the ladder pair of
/// (hamiltonian, temperature) is used.
struct SystemDocument {
  GKSLSystem system;
  HermitianMatrix system_hamiltonian;
  Temperature temperature = Temperature::infinite();
  bool default_dissipators = true;
  std::optional<std::string> label;
};
SystemDocument parse_system(const Json& j);

/// {"system_hamiltonian": M, "bath_hamiltonian": M, "unitary": M, "temperature": T}.
ThermalOperation parse_thermal_operation(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Sorted keys, no whitespace, doubles as %.17g, non-finite doubles as null.
std::string canonical_dump(const Json& j);

Json matrix_rows(const ComplexMatrix& m);
Json real_rows(const RealMatrix& m);

}  // namespace gibbsmaj::io
