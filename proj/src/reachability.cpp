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

#include "gibbsmaj/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gibbsmaj/lp.hpp"
#include "gibbsmaj/thermodynamics.hpp"

namespace gibbsmaj {

StateSet StateSet::from_states(std::vector<HermitianMatrix> states) {
  for (const auto& s : states) {
    if (std::abs(s.trace() - 1.0) > kStateTol || min_eigenvalue(s) < -kStateTol) {
      throw std::invalid_argument("StateSet: members must be PSD with unit trace");
    }
  }
  return StateSet(std::move(states));
}

StateSet StateSet::from_polytope(MajorizationPolytope polytope) { return StateSet(std::move(polytope)); }

const std::vector<HermitianMatrix>& StateSet::states() const {
  if (is_polytope()) throw std::logic_error("StateSet: polytope set has no state list");
  return std::get<std::vector<HermitianMatrix>>(repr_);
}

const MajorizationPolytope& StateSet::polytope() const {
  if (!is_polytope()) throw std::logic_error("StateSet: state list is not a polytope");
  return std::get<MajorizationPolytope>(repr_);
}

FeasibilityVerdict md_membership(const HermitianMatrix& x, const HermitianMatrix& rho, const GibbsReference& d,
                                 const SolverSettings& settings) {
  return cptp_feasibility(x, rho, d, settings);
}

FeasibilityVerdict md_membership(const HermitianMatrix& x, const StateSet& set, const GibbsReference& d,
                                 const SolverSettings& settings) {
  if (set.is_polytope()) {
    const auto& p = set.polytope();
    if (x.dim() != p.dim()) throw DimensionError("md_membership: dimension mismatch");
    std::vector<double> diag(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
      for (std::size_t j = 0; j < x.dim(); ++j)
        if (i != j && std::abs(x(i, j)) > 0.0) throw std::invalid_argument("md_membership: polytope sets hold diagonal states");
      diag[i] = x(i, i).real();
    }
    FeasibilityVerdict v;
    v.residual = std::max(0.0, p.max_violation(diag));
    v.status = p.contains(diag) ? FeasibilityStatus::kFeasible : FeasibilityStatus::kInfeasible;
    return v;
  }
  FeasibilityVerdict result;
  result.status = FeasibilityStatus::kInfeasible;
  result.residual = std::numeric_limits<double>::infinity();
  bool undecided = false;
  for (const auto& rho : set.states()) {
    auto v = cptp_feasibility(x, rho, d, settings);
    if (v.feasible()) return v;
    if (v.status == FeasibilityStatus::kUndecided) undecided = true;
    if (v.residual < result.residual) result = std::move(v);
  }
  if (undecided) result.status = FeasibilityStatus::kUndecided;
  return result;
}

ChoiMatrix random_gibbs_fixing_channel(const GibbsReference& d, Rng& rng) {
  const std::size_t n = d.dim();
  const double tr = d.trace();
  const HermitianMatrix h = spectral_apply(d.spectrum(), [tr](double l) { return -std::log(l / tr); });
  const GKSLSystem sys = thermal_system(GibbsContext(h, Temperature::finite(1.0)));

  std::uniform_real_distribution<double> time(0.05, 2.0);
  std::exponential_distribution<double> dirichlet(1.0);
  const std::vector<ChoiMatrix> parts{identity_channel(n), constant_channel(d.normalized()),
                                      propagator(sys, time(rng)), propagator(sys, time(rng))};
  std::vector<double> w(parts.size());
  double total = 0.0;
  for (double& x : w) total += (x = dirichlet(rng));
  for (double& x : w) x /= total;
  return mix(w, parts);
}

StarShapeReport star_shape_probe(const HermitianMatrix& rho, const GibbsReference& d, std::size_t samples, Rng& rng,
                                 const SolverSettings& settings) {
  if (std::abs(rho.trace() - 1.0) > StateSet::kStateTol || min_eigenvalue(rho) < -StateSet::kStateTol) {
    throw std::invalid_argument("star_shape_probe: rho must be PSD with unit trace");
  }
  StarShapeReport report;
  report.samples = samples;
  report.worst_margin = std::numeric_limits<double>::infinity();
  const HermitianMatrix centre = d.normalized();
  for (std::size_t s = 0; s < samples; ++s) {
    const HermitianMatrix member = apply_choi(random_gibbs_fixing_channel(d, rng), rho);
    for (double lambda : {0.25, 0.5, 0.75}) {
      const HermitianMatrix point = lambda * member + (1.0 - lambda) * centre;
      const auto v = md_membership(point, rho, d, settings);
      ++report.checks;
      report.worst_margin = std::min(report.worst_margin, v.margin);
      if (v.status == FeasibilityStatus::kInfeasible) ++report.violations;
      if (v.status == FeasibilityStatus::kUndecided) ++report.undecided;
    }
  }
  return report;
}

std::vector<double> compose_bound(std::span<const double> x0, const WeightVector& d) {
  return classical_maximizer(x0, d);
}

double polytope_distance(std::span<const double> point, const MajorizationPolytope& p) {
  const std::size_t n = p.dim();
  if (point.size() != n) throw DimensionError("polytope_distance: dimension mismatch");
  // Variables: x (free, n) then slack s (n); minimize sum s with |point - x| <= s.
  lp::Problem prob(2 * n);
  prob.objective.assign(2 * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) prob.objective[n + i] = 1.0;
  prob.free_vars.assign(2 * n, false);
  for (std::size_t i = 0; i < n; ++i) prob.free_vars[i] = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> up(2 * n, 0.0), down(2 * n, 0.0);
    up[i] = 1.0;
    up[n + i] = -1.0;
    down[i] = -1.0;
    down[n + i] = -1.0;
    prob.add_ub(up, point[i]);
    prob.add_ub(down, -point[i]);
  }
  for (std::size_t k = 0; k < p.row_count(); ++k) {
    const auto signs = p.sign_row(k);
    std::vector<double> row(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i] = signs[i];
    prob.add_ub(row, p.bounds()[k]);
  }
  const auto sol = lp::solve(prob);
  if (sol.status != lp::Status::kOptimal) throw std::runtime_error("polytope_distance: LP did not reach an optimum");
  return sol.objective;
}

HausdorffProbe hausdorff_nonexpansive_probe(std::span<const double> x, std::span<const double> y, const WeightVector& d) {
  if (x.size() != y.size() || x.size() != d.size()) throw DimensionError("hausdorff_nonexpansive_probe: length mismatch");
  if (x.size() > 4) throw PolytopeTooLarge("hausdorff_nonexpansive_probe: n must be at most 4");
  const auto px = polytope_inequalities({x.begin(), x.end()}, d);
  const auto py = polytope_inequalities({y.begin(), y.end()}, d);
  HausdorffProbe probe;
  for (const auto& v : polytope_vertices(px)) probe.set_distance = std::max(probe.set_distance, polytope_distance(v, py));
  for (const auto& v : polytope_vertices(py)) probe.set_distance = std::max(probe.set_distance, polytope_distance(v, px));
  for (std::size_t i = 0; i < x.size(); ++i) probe.point_distance += std::abs(x[i] - y[i]);
  return probe;
}

}  // namespace gibbsmaj
