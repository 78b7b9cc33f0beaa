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

#include "gibbsmaj/matrix_majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gibbsmaj {

namespace {

double l1_norm_scale(const HermitianMatrix& b) { return 1.0 + trace_norm(b); }

}  // namespace

GibbsReference::GibbsReference(HermitianMatrix d) : d_(std::move(d)), eig_(eig_hermitian(d_)) {
  if (eig_.eigenvalues.empty() || !(eig_.eigenvalues.front() > 0.0)) {
    throw std::invalid_argument("GibbsReference: D must be positive definite");
  }
  inv_sqrt_ = spectral_apply(eig_, [](double l) { return 1.0 / std::sqrt(l); });
}

GibbsReference::GibbsReference(const WeightVector& d) : GibbsReference(HermitianMatrix::diagonal(d.values())) {}

HermitianMatrix GibbsReference::whiten(const HermitianMatrix& x) const {
  return HermitianMatrix::symmetrized(inv_sqrt_.matrix() * x.matrix() * inv_sqrt_.matrix());
}

std::string to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::kFeasible:
      return "Feasible";
    case FeasibilityStatus::kInfeasible:
      return "Infeasible";
    case FeasibilityStatus::kUndecided:
      return "Undecided";
  }
  return "Unknown";
}

DiagonalFrame reduce_to_diagonal(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d) {
  if (a.dim() != d.dim() || b.dim() != d.dim()) throw DimensionError("reduce_to_diagonal: dimension mismatch");
  const ComplexMatrix& v = d.spectrum().eigenvectors;
  const ComplexMatrix v_adj = v.adjoint();
  return DiagonalFrame{conjugate_by(v_adj, a), conjugate_by(v_adj, b), WeightVector(d.spectrum().eigenvalues), v};
}

CurveCheck trace_norm_curve_details(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d) {
  if (a.dim() != d.dim() || b.dim() != d.dim()) throw DimensionError("trace_norm_curve_check: dimension mismatch");
  std::vector<double> kinks = eig_hermitian(d.whiten(a)).eigenvalues;
  const auto kinks_b = eig_hermitian(d.whiten(b)).eigenvalues;
  kinks.insert(kinks.end(), kinks_b.begin(), kinks_b.end());
  std::sort(kinks.begin(), kinks.end());

  const double lo = kinks.front();
  const double hi = kinks.back();
  const double reach = 1.0 + (hi - lo);
  std::vector<double> points = kinks;
  for (std::size_t k = 0; k + 1 < kinks.size(); ++k) points.push_back(0.5 * (kinks[k] + kinks[k + 1]));
  points.push_back(lo - reach);
  points.push_back(hi + reach);
  constexpr int kGrid = 512;
  for (int g = 0; g < kGrid; ++g) points.push_back(lo + (hi - lo) * g / (kGrid - 1));

  const double tol = 1e-9 * l1_norm_scale(b);
  CurveCheck result;
  result.worst_slack = std::numeric_limits<double>::infinity();
  for (double t : points) {
    const HermitianMatrix td = t * d.matrix();
    const double slack = trace_norm(b - td) - trace_norm(a - td);
    if (slack < result.worst_slack) {
      result.worst_slack = slack;
      result.worst_t = t;
    }
  }
  result.evaluations = points.size();
  result.holds = result.worst_slack >= -tol;
  return result;
}

bool trace_norm_curve_check(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d) {
  return trace_norm_curve_details(a, b, d).holds;
}

QubitCheck qubit_dmaj_details(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d) {
  if (d.dim() != 2 || a.dim() != 2 || b.dim() != 2) throw DimensionNot2("qubit_dmaj_check needs 2x2 matrices");
  QubitCheck q;
  const auto spec_b = eig_hermitian(d.whiten(b)).eigenvalues;
  const auto spec_a = eig_hermitian(d.whiten(a)).eigenvalues;
  q.b1 = spec_b[0];
  q.b2 = spec_b[1];
  const double tol = 1e-9 * l1_norm_scale(b);
  const HermitianMatrix& dm = d.matrix();

  q.traces_match = std::abs(a.trace() - b.trace()) <= tol;
  q.norms_hold = true;
  for (double bi : {q.b1, q.b2}) {
    if (trace_norm(a - bi * dm) > trace_norm(b - bi * dm) + tol) q.norms_hold = false;
  }

  const HermitianMatrix a_low = a - q.b1 * dm;
  const HermitianMatrix a_high = q.b2 * dm - a;
  q.psd_precondition = min_eigenvalue(a_low) >= -tol && min_eigenvalue(a_high) >= -tol;
  q.margin = std::min(spec_a[0] - q.b1, q.b2 - spec_a[1]);

  auto clipped_sqrt = [](const HermitianMatrix& x) {
    return spectral_apply(eig_hermitian(x), [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
  };
  q.fidelity_b =
      trace_norm(clipped_sqrt(b - q.b1 * dm).matrix() * clipped_sqrt(q.b2 * dm - b).matrix());
  if (!q.psd_precondition) {
    q.flagged = true;
    q.verdict = false;
    return q;
  }
  q.fidelity_a = trace_norm(clipped_sqrt(a_low).matrix() * clipped_sqrt(a_high).matrix());
  q.margin = std::min(q.margin, q.fidelity_a - q.fidelity_b);
  q.verdict = q.traces_match && q.norms_hold && q.fidelity_a >= q.fidelity_b - 1e-9;
  return q;
}

bool qubit_dmaj_check(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d) {
  return qubit_dmaj_details(a, b, d).verdict;
}

ChoiMatrix minimal_element_witness(const HermitianMatrix& b, const GibbsReference& d) {
  if (b.dim() != d.dim()) throw DimensionError("minimal_element_witness: dimension mismatch");
  if (std::abs(b.trace() - d.trace()) > 1e-9 * (1.0 + std::abs(d.trace()))) {
    std::ostringstream msg;
    msg << "minimal_element_witness: tr(B) = " << b.trace() << " differs from tr(D) = " << d.trace();
    throw std::invalid_argument(msg.str());
  }
  return constant_channel(d.normalized());
}

HermitianMatrix maximal_element(const WeightVector& d, std::size_t k) {
  if (k >= d.size()) throw std::out_of_range("maximal_element: index out of range");
  std::vector<double> diag(d.size(), 0.0);
  diag[k] = d.sum();
  return HermitianMatrix::diagonal(diag);
}

std::size_t maximal_element_index(const WeightVector& d) {
  return static_cast<std::size_t>(std::min_element(d.values().begin(), d.values().end()) - d.values().begin());
}

namespace {

bool is_diagonal(const HermitianMatrix& m) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j && m(i, j) != Complex(0.0)) return false;
  return true;
}

}  // namespace

bool maximal_element_check(const HermitianMatrix& b, const GibbsReference& d, std::size_t k,
                           const SolverSettings& settings) {
  if (b.dim() != d.dim()) throw DimensionError("maximal_element_check: dimension mismatch");
  const auto spec = eig_hermitian(b).eigenvalues;
  const double scale = std::max(std::abs(spec.front()), std::abs(spec.back()));
  if (spec.front() < -1e-9 * scale) throw std::invalid_argument("maximal_element_check: B is not PSD");
  if (std::abs(b.trace() - d.trace()) > 1e-9 * (1.0 + d.trace())) {
    throw std::invalid_argument("maximal_element_check: tr(B) must equal tr(D)");
  }
  if (is_diagonal(d.matrix())) {
    std::vector<double> diag(d.dim());
    for (std::size_t i = 0; i < d.dim(); ++i) diag[i] = d.matrix()(i, i).real();
    const WeightVector w(diag);
    return cptp_feasibility(b, maximal_element(w, k), d, settings).feasible();
  }
  const auto frame = reduce_to_diagonal(b, b, d);
  const GibbsReference diag_ref(frame.d);
  return cptp_feasibility(frame.b, maximal_element(frame.d, k), diag_ref, settings).feasible();
}

bool maximal_element_check(const HermitianMatrix& b, const GibbsReference& d, const SolverSettings& settings) {
  std::vector<double> diag(d.dim());
  if (is_diagonal(d.matrix())) {
    for (std::size_t i = 0; i < d.dim(); ++i) diag[i] = d.matrix()(i, i).real();
  } else {
    diag = d.spectrum().eigenvalues;
  }
  return maximal_element_check(b, d, maximal_element_index(WeightVector(diag)), settings);
}

bool diagonal_reduction_check(std::span<const double> x, std::span<const double> y, const WeightVector& d,
                              const SolverSettings& settings) {
  if (x.size() != y.size() || x.size() != d.size()) throw DimensionError("diagonal_reduction_check: length mismatch");
  const bool vector_verdict = d_majorizes(x, y, d);
  const auto verdict =
      cptp_feasibility(HermitianMatrix::diagonal(x), HermitianMatrix::diagonal(y), GibbsReference(d), settings);
  const bool agrees = verdict.status != FeasibilityStatus::kUndecided && verdict.feasible() == vector_verdict;
  if (!agrees) {
    std::ostringstream msg;
    msg << "diagonal_reduction_check: matrix feasibility " << to_string(verdict.status) << " (residual "
        << verdict.residual << ") but vector test says " << (vector_verdict ? "majorized" : "not majorized");
    throw DisagreementDetected(msg.str(), verdict.status, vector_verdict);
  }
  return vector_verdict;
}

}  // namespace gibbsmaj
