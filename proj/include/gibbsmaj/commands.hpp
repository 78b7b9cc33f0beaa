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
#include <string>

#include "gibbsmaj/io.hpp"

namespace gibbsmaj::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // not majorized, or an audit failed
  kInputError = 2,
  kDisagreement = 3,
  kUndecided = 4,
  kPositivityLoss = 5,
  kEnergyViolation = 6,
};

struct CommandResult {
  int exit_code = kOk;
  io::Json report;
  /// Human-readable diagnostic for stderr; empty on success.
  std::string message;
};

enum class OutputFormat { kJson, kText };

struct CommonOptions {
  bool timing = false;
  OutputFormat format = OutputFormat::kJson;
};

enum class VectorOracle { kNorm, kLp, kBoth };

struct CheckVectorOptions {
  std::filesystem::path x, y, d;
  VectorOracle oracle = VectorOracle::kNorm;
  CommonOptions common;
};

enum class MatrixMethod { kAuto, kQubit, kFeasibility, kCurve };

struct CheckMatrixOptions {
  std::filesystem::path a, b, d;
  MatrixMethod method = MatrixMethod::kAuto;
  std::optional<double> tol;
  std::optional<int> max_iters;
  bool dykstra = false;
  std::optional<std::filesystem::path> certificate;
  CommonOptions common;
};

struct PolytopeOptions {
  std::filesystem::path y, d;
  bool vertices = false;
  bool maximizer = false;
  CommonOptions common;
};

struct SimulateOptions {
  std::filesystem::path system, rho0;
  double horizon = 5.0;
  double step = 0.0;  // 0 selects the integrator default
  int samples = 100;  // approximate number of recorded samples
  bool audit_monotone = false;
  bool audit_covariance = false;
  std::optional<std::filesystem::path> trajectory;
  CommonOptions common;
};

struct ThermalOpOptions {
  std::filesystem::path op;
  bool verify = false;
  CommonOptions common;
};

/// Value of GIBBSMAJ_TOL, if set. Throws io::InputError on a malformed value.
std::optional<double> tolerance_from_environment();

CommandResult check_vector(const CheckVectorOptions& options);
CommandResult check_matrix(const CheckMatrixOptions& options);
CommandResult polytope(const PolytopeOptions& options);
CommandResult simulate(const SimulateOptions& options);
CommandResult thermal_op(const ThermalOpOptions& options);

/// The report as canonical JSON, or a short key: value listing.
std::string render(const CommandResult& result, OutputFormat format);

}  // namespace gibbsmaj::cli
