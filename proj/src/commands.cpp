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

#include "gibbsmaj/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "gibbsmaj/matrix_majorization.hpp"
#include "gibbsmaj/thermodynamics.hpp"
#include "gibbsmaj/vector_majorization.hpp"

namespace gibbsmaj::cli {

namespace {

using io::Json;

constexpr double kAuditTol = 1e-8;

CommandResult guarded(const Json& echo, const CommonOptions& common, const std::function<CommandResult()>& body) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult result;
  try {
    result = body();
  } catch (const io::InputError& e) {
    result = {kInputError, Json{{"verdict", "input-error"}, {"error", e.what()}}, e.what()};
  } catch (const std::invalid_argument& e) {
    // DimensionError, NotHermitian, PolytopeTooLarge and friends.
    result = {kInputError, Json{{"verdict", "input-error"}, {"error", e.what()}}, e.what()};
  }
  result.report["command"] = echo;
  if (common.timing) {
    result.report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

Json vector_json(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

std::vector<double> load_vector(const std::filesystem::path& path, const std::string& what) {
  return io::parse_vector(io::read_json_file(path), what + " (" + path.string() + ")").values;
}

HermitianMatrix load_hermitian(const std::filesystem::path& path, const std::string& what) {
  const std::string context = what + " (" + path.string() + ")";
  return io::require_hermitian(io::parse_matrix(io::read_json_file(path), context), context);
}

WeightVector load_weights(const std::filesystem::path& path) {
  try {
    return WeightVector(load_vector(path, "d"));
  } catch (const io::InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw io::InputError(std::string("d (") + path.string() + "): " + e.what());
  }
}

std::string verdict_word(bool majorized) { return majorized ? "majorized" : "not-majorized"; }

std::string to_string(VectorOracle o) {
  switch (o) {
    case VectorOracle::kNorm:
      return "norm";
    case VectorOracle::kLp:
      return "lp";
    case VectorOracle::kBoth:
      return "both";
  }
  return "norm";
}

std::string to_string(MatrixMethod m) {
  switch (m) {
    case MatrixMethod::kAuto:
      return "auto";
    case MatrixMethod::kQubit:
      return "qubit";
    case MatrixMethod::kFeasibility:
      return "feasibility";
    case MatrixMethod::kCurve:
      return "curve";
  }
  return "auto";
}

double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  return (a.matrix().matrix() - b.matrix().matrix()).frobenius_norm();
}

}  // namespace

std::optional<double> tolerance_from_environment() {
  const char* raw = std::getenv("GIBBSMAJ_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw io::InputError(std::string("GIBBSMAJ_TOL: expected a positive number, got \"") + raw + "\"");
  }
  return v;
}

CommandResult check_vector(const CheckVectorOptions& options) {
  const Json echo = {{"name", "check-vector"},
                     {"x", options.x.string()},
                     {"y", options.y.string()},
                     {"d", options.d.string()},
                     {"oracle", to_string(options.oracle)}};
  return guarded(echo, options.common, [&] {
    const auto x = load_vector(options.x, "x");
    const auto y = load_vector(options.y, "y");
    const WeightVector d = load_weights(options.d);
    if (x.size() != y.size() || x.size() != d.size()) throw io::InputError("x, y and d must have equal length");

    CommandResult result;
    Json& report = result.report;
    report["oracle"] = to_string(options.oracle);
    std::optional<bool> norm_verdict, lp_verdict;
    if (options.oracle != VectorOracle::kLp) {
      norm_verdict = d_majorizes(x, y, d);
      report["norm_verdict"] = verdict_word(*norm_verdict);
    }
    if (options.oracle != VectorOracle::kNorm) {
      const auto witness = d_stochastic_witness(x, y, d);
      lp_verdict = witness.has_value();
      report["lp_verdict"] = verdict_word(*lp_verdict);
      if (witness) report["witness"] = io::real_rows(*witness);
    }
    if (norm_verdict && lp_verdict && *norm_verdict != *lp_verdict) {
      report["verdict"] = "oracle-disagreement";
      result.exit_code = kDisagreement;
      result.message = "the 1-norm test and the linear program disagree";
      return result;
    }
    const bool verdict = norm_verdict ? *norm_verdict : *lp_verdict;
    report["verdict"] = verdict_word(verdict);
    result.exit_code = verdict ? kOk : kNegative;
    return result;
  });
}

CommandResult check_matrix(const CheckMatrixOptions& options) {
  Json echo = {{"name", "check-matrix"},
               {"a", options.a.string()},
               {"b", options.b.string()},
               {"d", options.d.string()},
               {"method", to_string(options.method)},
               {"solver", options.dykstra ? "dykstra" : "interior-point"}};
  if (options.tol) echo["tol"] = *options.tol;
  if (options.max_iters) echo["max_iters"] = *options.max_iters;
  return guarded(echo, options.common, [&] {
    const HermitianMatrix a = load_hermitian(options.a, "A");
    const HermitianMatrix b = load_hermitian(options.b, "B");
    const HermitianMatrix d_matrix = load_hermitian(options.d, "D");
    if (a.dim() != b.dim() || a.dim() != d_matrix.dim()) throw io::InputError("A, B and D must have equal size");
    std::optional<GibbsReference> d_ref;
    try {
      d_ref.emplace(d_matrix);
    } catch (const std::invalid_argument&) {
      throw io::InputError("D (" + options.d.string() + "): must be positive definite");
    }
    const GibbsReference& d = *d_ref;

    SolverSettings settings;
    settings.method = options.dykstra ? FeasibilityMethod::kDykstra : FeasibilityMethod::kInteriorPoint;
    if (const auto env = tolerance_from_environment()) settings.feas_tol = *env;
    if (options.tol) {
      if (!(*options.tol > 0.0)) throw io::InputError("--tol must be positive");
      settings.feas_tol = *options.tol;
    }
    if (options.max_iters) {
      if (*options.max_iters < 1) throw io::InputError("--max-iters must be positive");
      settings.max_iterations = *options.max_iters;
      settings.max_newton_steps = *options.max_iters;
    }

    MatrixMethod method = options.method;
    if (method == MatrixMethod::kAuto) method = a.dim() == 2 ? MatrixMethod::kQubit : MatrixMethod::kFeasibility;

    CommandResult result;
    Json& report = result.report;
    report["n"] = a.dim();
    report["method"] = to_string(method);
    report["feas_tol"] = settings.feas_tol;

    const CurveCheck curve = trace_norm_curve_details(a, b, d);
    report["curve_check"] = {{"holds", curve.holds},
                             {"worst_slack", curve.worst_slack},
                             {"worst_t", curve.worst_t},
                             {"evaluations", curve.evaluations}};
    report["annotation"] = curve.holds ? "trace-norm condition holds" : "trace-norm condition fails";

    switch (method) {
      case MatrixMethod::kQubit: {
        if (a.dim() != 2) throw io::InputError("--method qubit needs 2x2 matrices");
        const QubitCheck q = qubit_dmaj_details(a, b, d);
        report["qubit"] = {{"b1", q.b1},
                           {"b2", q.b2},
                           {"traces_match", q.traces_match},
                           {"norms_hold", q.norms_hold},
                           {"psd_precondition", q.psd_precondition},
                           {"fidelity_a", q.fidelity_a},
                           {"fidelity_b", q.fidelity_b},
                           {"flagged", q.flagged},
                           {"margin", q.margin}};
        if (q.flagged) {
          const FeasibilityVerdict v = cptp_feasibility(a, b, d, settings);
          report["arbiter"] = {{"status", to_string(v.status)}, {"margin", v.margin}};
          if (v.status == FeasibilityStatus::kFeasible) {
            report["verdict"] = "oracle-disagreement";
            result.exit_code = kDisagreement;
            result.message = "closed-form qubit test rejected an instance the feasibility solver accepts";
            break;
          }
        }
        report["verdict"] = verdict_word(q.verdict);
        result.exit_code = q.verdict ? kOk : kNegative;
        break;
      }
      case MatrixMethod::kCurve:
        report["note"] = "necessary condition only";
        report["verdict"] = curve.holds ? "curve-holds" : "not-majorized";
        result.exit_code = curve.holds ? kOk : kNegative;
        break;
      case MatrixMethod::kFeasibility:
      case MatrixMethod::kAuto: {
        const FeasibilityVerdict v = cptp_feasibility(a, b, d, settings);
        report["status"] = to_string(v.status);
        report["residual"] = v.residual;
        report["margin"] = v.margin;
        report["iterations"] = v.iterations;
        if (v.status == FeasibilityStatus::kUndecided) {
          report["verdict"] = "undecided";
          result.exit_code = kUndecided;
          result.message = "feasibility solver could not decide; try a larger --max-iters or --tol";
          break;
        }
        report["verdict"] = verdict_word(v.feasible());
        result.exit_code = v.feasible() ? kOk : kNegative;
        if (v.certificate && options.certificate) {
          io::MatrixDocument doc{v.certificate->matrix().matrix(), "choi"};
          io::write_text_file(*options.certificate, io::canonical_dump(io::to_json(doc)));
          report["certificate"] = options.certificate->string();
        }
        break;
      }
    }
    return result;
  });
}

CommandResult polytope(const PolytopeOptions& options) {
  const Json echo = {{"name", "polytope"},
                     {"y", options.y.string()},
                     {"d", options.d.string()},
                     {"vertices", options.vertices},
                     {"maximizer", options.maximizer}};
  return guarded(echo, options.common, [&] {
    const auto y = load_vector(options.y, "y");
    const WeightVector d = load_weights(options.d);
    if (y.size() != d.size()) throw io::InputError("y and d must have equal length");
    const MajorizationPolytope p = polytope_inequalities(y, d);

    CommandResult result;
    Json& report = result.report;
    report["n"] = y.size();
    report["row_count"] = p.row_count();
    Json rows = Json::array();
    for (std::size_t k = 0; k < p.row_count(); ++k) {
      Json signs = Json::array();
      for (int s : p.sign_row(k)) signs.push_back(s);
      rows.push_back({{"signs", signs}, {"bound", p.bounds()[k]}});
    }
    report["inequalities"] = rows;
    if (options.vertices) {
      const auto vertices = polytope_vertices(p);
      Json list = Json::array();
      bool recheck = true;
      for (const auto& v : vertices) {
        list.push_back(vector_json(v));
        recheck = recheck && d_majorizes(v, y, d);
      }
      report["vertices"] = list;
      report["vertices_recheck"] = recheck;
      if (!recheck) {
        result.exit_code = kDisagreement;
        result.message = "a vertex failed the d-majorization re-check";
      }
    }
    if (options.maximizer) report["maximizer"] = vector_json(classical_maximizer(y, d));
    report["verdict"] = "ok";
    return result;
  });
}

CommandResult simulate(const SimulateOptions& options) {
  Json echo = {{"name", "simulate"},
               {"system", options.system.string()},
               {"rho0", options.rho0.string()},
               {"horizon", options.horizon},
               {"samples", options.samples},
               {"audit_monotone", options.audit_monotone},
               {"audit_covariance", options.audit_covariance}};
  if (options.step > 0.0) echo["step"] = options.step;
  if (options.trajectory) echo["trajectory"] = options.trajectory->string();
  return guarded(echo, options.common, [&] {
    const io::SystemDocument doc = io::parse_system(io::read_json_file(options.system));
    const HermitianMatrix rho0 = load_hermitian(options.rho0, "rho0");
    if (rho0.dim() != doc.system.dim()) throw io::InputError("rho0 and the system differ in dimension");
    if (!(options.horizon > 0.0)) throw io::InputError("--horizon must be positive");
    if (options.samples < 1) throw io::InputError("--samples must be positive");

    IntegrationOptions integ;
    integ.step = options.step > 0.0 ? options.step : default_step(doc.system, options.horizon);
    const auto steps = static_cast<long long>(std::ceil(options.horizon / integ.step - 1e-9));
    integ.record_every = static_cast<int>(std::max(1LL, steps / options.samples));

    CommandResult result;
    Json& report = result.report;
    Trajectory traj;
    try {
      traj = integrate_gksl(doc.system, rho0, options.horizon, integ);
    } catch (const PositivityLoss& e) {
      report["verdict"] = "positivity-loss";
      report["t"] = e.t;
      report["min_eigenvalue"] = e.min_eigenvalue;
      result.exit_code = kPositivityLoss;
      result.message = e.what();
      return result;
    } catch (const AccuracyNotReached& e) {
      report["verdict"] = "accuracy-not-reached";
      report["halving_deviation"] = e.deviation;
      result.exit_code = kNegative;
      result.message = e.what();
      return result;
    }

    report["step"] = traj.step;
    report["sample_count"] = traj.samples.size();
    report["max_trace_drift"] = traj.max_trace_drift;
    report["max_hermiticity_residual"] = traj.max_hermiticity_residual;
    report["min_eigenvalue"] = traj.min_eigenvalue;
    report["halving_deviation"] = traj.halving_deviation;
    double from_initial = 0.0;
    for (const auto& s : traj.samples)
      from_initial = std::max(from_initial, (s.rho.matrix() - rho0.matrix()).frobenius_norm());
    report["max_distance_from_initial"] = from_initial;

    bool failed = false;
    bool undecided = false;
    Json audits = Json::object();
    if (doc.system.gamma.max_abs() == 0.0) {
      const auto spec0 = eig_hermitian(rho0).eigenvalues;
      double drift = 0.0;
      for (const auto& s : traj.samples) {
        const auto spec = eig_hermitian(s.rho).eigenvalues;
        for (std::size_t i = 0; i < spec.size(); ++i) drift = std::max(drift, std::abs(spec[i] - spec0[i]));
      }
      const bool pass = drift <= kAuditTol;
      audits["spectrum"] = {{"max_drift", drift}, {"pass", pass}};
      failed = failed || !pass;
    }
    if (options.audit_monotone) {
      const GibbsReference d(gibbs_state(doc.system_hamiltonian, doc.temperature));
      std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
      for (std::size_t i = 0; i < traj.samples.size(); ++i)
        for (std::size_t j = i + 1; j < traj.samples.size(); ++j) all_pairs.emplace_back(i, j);
      const std::size_t wanted = std::min<std::size_t>(10, all_pairs.size());
      Json pairs = Json::array();
      bool pass = true;
      for (std::size_t k = 0; k < wanted; ++k) {
        const auto [early, late] = all_pairs[k * all_pairs.size() / wanted];
        const auto v = cptp_feasibility(traj.samples[late].rho, traj.samples[early].rho, d);
        pairs.push_back({{"t_early", traj.samples[early].t},
                         {"t_late", traj.samples[late].t},
                         {"status", to_string(v.status)},
                         {"margin", v.margin}});
        if (v.status == FeasibilityStatus::kInfeasible) pass = false;
        if (v.status == FeasibilityStatus::kUndecided) undecided = true;
      }
      audits["monotone"] = {{"pairs", pairs}, {"pass", pass}};
      failed = failed || !pass;
    }
    if (options.audit_covariance) {
      Json checks = Json::array();
      double worst = 0.0;
      for (int k = 1; k <= 5; ++k) {
        const double t = options.horizon * k / 5.0;
        const double r = covariance_residual(propagator(doc.system, t), doc.system_hamiltonian);
        worst = std::max(worst, r);
        checks.push_back({{"t", t}, {"residual", r}});
      }
      const bool pass = worst <= kAuditTol;
      audits["covariance"] = {{"checks", checks}, {"max_residual", worst}, {"pass", pass}};
      failed = failed || !pass;
    }
    report["audits"] = audits;

    Json samples = Json::array();
    for (const auto& s : traj.samples) samples.push_back({{"t", s.t}, {"rho", io::matrix_rows(s.rho)}});
    if (options.trajectory) {
      io::write_text_file(*options.trajectory, io::canonical_dump(Json{{"n", rho0.dim()}, {"samples", samples}}));
    } else {
      report["trajectory"] = samples;
    }

    if (failed) {
      report["verdict"] = "audit-failed";
      result.exit_code = kNegative;
      result.message = "an audit failed";
    } else if (undecided) {
      report["verdict"] = "undecided";
      result.exit_code = kUndecided;
      result.message = "a monotonicity check was undecided";
    } else {
      report["verdict"] = "ok";
    }
    return result;
  });
}

CommandResult thermal_op(const ThermalOpOptions& options) {
  const Json echo = {{"name", "thermal-op"}, {"op", options.op.string()}, {"verify", options.verify}};
  return guarded(echo, options.common, [&] {
    const ThermalOperation op = io::parse_thermal_operation(io::read_json_file(options.op));
    CommandResult result;
    Json& report = result.report;
    const double commutator_norm = energy_conservation_check(op);
    report["commutator_norm"] = commutator_norm;
    if (commutator_norm > ThermalOperation::kEnergyTol) {
      report["verdict"] = "energy-not-conserved";
      result.exit_code = kEnergyViolation;
      result.message = "U does not commute with the total Hamiltonian";
      return result;
    }
    const ChoiMatrix phi = build_thermal_operation(op);
    const HermitianMatrix& h_s = op.system_hamiltonian();
    const std::size_t n = h_s.dim();
    const double fixed_point = gibbs_fixed_point_residual(phi, h_s, op.temperature());
    const double covariance = covariance_residual(phi, h_s);
    const double cptp = phi.cptp_residual();
    report["gibbs_fixed_point_residual"] = fixed_point;
    report["covariance_residual"] = covariance;
    report["cptp_residual"] = cptp;
    report["identity_channel"] = choi_distance(phi, identity_channel(n)) <= 1e-10;
    report["constant_to_gibbs"] =
        choi_distance(phi, constant_channel(gibbs_state(h_s, op.temperature()))) <= 1e-10;
    bool pass = fixed_point <= kAuditTol && covariance <= kAuditTol && cptp <= kAuditTol;

    if (options.verify) {
      // Kraus operators sqrt(p_b) (I (x) <r_a|) U (I (x) |r_b>) over the bath eigenbasis.
      const std::size_t m = op.bath_hamiltonian().dim();
      const auto bath = eig_hermitian(gibbs_state(op.bath_hamiltonian(), op.temperature()));
      std::vector<ComplexMatrix> kraus;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          const double p = std::max(0.0, bath.eigenvalues[b]);
          ComplexMatrix k(n, n);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
              Complex s = 0.0;
              for (std::size_t r = 0; r < m; ++r)
                for (std::size_t c = 0; c < m; ++c)
                  s += std::conj(bath.eigenvectors(r, a)) * op.unitary()(i * m + r, j * m + c) * bath.eigenvectors(c, b);
              k(i, j) = std::sqrt(p) * s;
            }
          kraus.push_back(std::move(k));
        }
      const double agreement = choi_distance(phi, kraus_channel(kraus));
      report["kraus_agreement"] = agreement;
      pass = pass && agreement <= 1e-10;
    }
    report["verdict"] = pass ? "thermal-operation" : "audit-failed";
    result.exit_code = pass ? kOk : kNegative;
    if (!pass) result.message = "a residual exceeded its tolerance";
    return result;
  });
}

std::string render(const CommandResult& result, OutputFormat format) {
  if (format == OutputFormat::kJson) return io::canonical_dump(result.report);
  std::string out;
  for (auto it = result.report.begin(); it != result.report.end(); ++it) {
    if (!out.empty()) out += '\n';
    out += it.key() + ": " + (it.value().is_string() ? it.value().get<std::string>() : io::canonical_dump(it.value()));
  }
  return out;
}

}  // namespace gibbsmaj::cli
