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

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "gibbsmaj/commands.hpp"

namespace {

using gibbsmaj::cli::CommandResult;
using gibbsmaj::cli::CommonOptions;
using gibbsmaj::cli::OutputFormat;

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_flag("--timing", common.timing, "Add wall_time_s to the report");
  sub->add_option("--out", common.format, "Report format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"json", OutputFormat::kJson},
                                                                               {"text", OutputFormat::kText}}));
}

int emit(const CommandResult& result, OutputFormat format) {
  std::cout << gibbsmaj::cli::render(result, format) << '\n';
  if (!result.message.empty()) std::cerr << "gibbsmaj: " << result.message << '\n';
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = gibbsmaj::cli;
  CLI::App app{"Majorization relative to a Gibbs state: vector, matrix and thermal checks"};
  app.require_subcommand(1);

  cli::CheckVectorOptions vec;
  auto* check_vector = app.add_subcommand("check-vector", "Is x d-majorized by y?");
  check_vector->add_option("x", vec.x, "x vector file")->required()->check(CLI::ExistingFile);
  check_vector->add_option("y", vec.y, "y vector file")->required()->check(CLI::ExistingFile);
  check_vector->add_option("d", vec.d, "weight vector file")->required()->check(CLI::ExistingFile);
  check_vector->add_option("--oracle", vec.oracle, "Decision route")
      ->transform(CLI::CheckedTransformer(std::map<std::string, cli::VectorOracle>{
          {"norm", cli::VectorOracle::kNorm}, {"lp", cli::VectorOracle::kLp}, {"both", cli::VectorOracle::kBoth}}));
  add_common(check_vector, vec.common);

  cli::CheckMatrixOptions mat;
  std::string solver = "interior-point";
  std::string certificate;
  auto* check_matrix = app.add_subcommand("check-matrix", "Is A D-majorized by B?");
  check_matrix->add_option("A", mat.a, "A matrix file")->required()->check(CLI::ExistingFile);
  check_matrix->add_option("B", mat.b, "B matrix file")->required()->check(CLI::ExistingFile);
  check_matrix->add_option("D", mat.d, "D matrix file")->required()->check(CLI::ExistingFile);
  check_matrix->add_option("--method", mat.method, "Decision method")
      ->transform(CLI::CheckedTransformer(std::map<std::string, cli::MatrixMethod>{
          {"auto", cli::MatrixMethod::kAuto},
          {"qubit", cli::MatrixMethod::kQubit},
          {"feasibility", cli::MatrixMethod::kFeasibility},
          {"curve", cli::MatrixMethod::kCurve}}));
  check_matrix->add_option("--tol", mat.tol, "Feasibility tolerance (overrides GIBBSMAJ_TOL)");
  check_matrix->add_option("--max-iters", mat.max_iters, "Iteration cap for the feasibility solver");
  check_matrix->add_option("--solver", solver, "Feasibility solver")
      ->check(CLI::IsMember({"interior-point", "dykstra"}));
  check_matrix->add_option("--certificate", certificate, "Write the Choi matrix of a found channel here");
  add_common(check_matrix, mat.common);

  cli::PolytopeOptions poly;
  auto* polytope = app.add_subcommand("polytope", "Inequalities, vertices and classical maximizer of M_d(y)");
  polytope->add_option("y", poly.y, "y vector file")->required()->check(CLI::ExistingFile);
  polytope->add_option("d", poly.d, "weight vector file")->required()->check(CLI::ExistingFile);
  polytope->add_flag("--vertices", poly.vertices, "Enumerate vertices (n <= 5)");
  polytope->add_flag("--maximizer", poly.maximizer, "Compute the classical maximizer (n <= 5)");
  add_common(polytope, poly.common);

  cli::SimulateOptions sim;
  std::string trajectory;
  auto* simulate = app.add_subcommand("simulate", "Integrate a controlled thermal master equation");
  simulate->add_option("system", sim.system, "system file")->required()->check(CLI::ExistingFile);
  simulate->add_option("rho0", sim.rho0, "initial state file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--horizon", sim.horizon, "Final time")->capture_default_str();
  simulate->add_option("--step", sim.step, "RK4 step (default: derived from the generator norm)");
  simulate->add_option("--samples", sim.samples, "Approximate number of recorded samples")->capture_default_str();
  simulate->add_flag("--audit-monotone", sim.audit_monotone, "Check later states are D-majorized by earlier ones");
  simulate->add_flag("--audit-covariance", sim.audit_covariance, "Check the propagator commutes with ad_H");
  simulate->add_option("--trajectory", trajectory, "Write samples here instead of embedding them in the report");
  add_common(simulate, sim.common);

  cli::ThermalOpOptions top;
  auto* thermal = app.add_subcommand("thermal-op", "Build and audit a thermal operation");
  thermal->add_option("op", top.op, "operation file")->required()->check(CLI::ExistingFile);
  thermal->add_flag("--verify", top.verify, "Cross-check the channel against its Kraus form");
  add_common(thermal, top.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInputError;
  }

  if (*check_vector) return emit(cli::check_vector(vec), vec.common.format);
  if (*check_matrix) {
    mat.dykstra = solver == "dykstra";
    if (!certificate.empty()) mat.certificate = certificate;
    return emit(cli::check_matrix(mat), mat.common.format);
  }
  if (*polytope) return emit(cli::polytope(poly), poly.common.format);
  if (*simulate) {
    if (!trajectory.empty()) sim.trajectory = trajectory;
    return emit(cli::simulate(sim), sim.common.format);
  }
  return emit(cli::thermal_op(top), top.common.format);
}
