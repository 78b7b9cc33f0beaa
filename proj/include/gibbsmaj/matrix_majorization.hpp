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

#include <optional>
#include <stdexcept>
#include <string>

#include "gibbsmaj/channel.hpp"
#include "gibbsmaj/linalg.hpp"
#include "gibbsmaj/vector_majorization.hpp"

namespace gibbsmaj {

/// Positive definite fixed point D, with its spectral data cached.
class GibbsReference {
 public:
  explicit GibbsReference(HermitianMatrix d);
  explicit GibbsReference(const WeightVector& d);

  std::size_t dim() const { return d_.dim(); }
  const HermitianMatrix& matrix() const { return d_; }
  const Eigendecomposition& spectrum() const { return eig_; }
  const HermitianMatrix& inverse_sqrt() const { return inv_sqrt_; }
  double trace() const { return d_.trace(); }
  /// D / tr(D).
  HermitianMatrix normalized() const { return (1.0 / trace()) * d_; }
  /// D^{-1/2} X D^{-1/2}.
  HermitianMatrix whiten(const HermitianMatrix& x) const;

 private:
  HermitianMatrix d_;
  Eigendecomposition eig_;
  HermitianMatrix inv_sqrt_;
};

enum class FeasibilityStatus { kFeasible, kInfeasible, kUndecided };
std::string to_string(FeasibilityStatus s);

struct FeasibilityVerdict {
  FeasibilityStatus status = FeasibilityStatus::kUndecided;
  /// PSD Choi matrix meeting the linear constraints to `residual`; set iff feasible.
  std::optional<ChoiMatrix> certificate;
  /// Linear-constraint residual |C(J) - c| of the best PSD candidate.
  double residual = 0.0;
  /// Interior point: best lower bound on max lambda_min(J) over the affine
  /// set when feasible, the dual upper bound when infeasible. Zero for Dykstra.
  double margin = 0.0;
  int iterations = 0;

  bool feasible() const { return status == FeasibilityStatus::kFeasible; }
};

enum class FeasibilityMethod { kInteriorPoint, kDykstra };

struct SolverSettings {
  FeasibilityMethod method = FeasibilityMethod::kInteriorPoint;
  double feas_tol = 1e-7;
  double trace_tol = 1e-9;
  // Dykstra
  int max_iterations = 50000;
  int plateau_window = 500;
  double plateau_improvement = 1e-12;
  // Interior point
  int max_newton_steps = 400;
  double max_barrier = 1e13;
};

/// Decides whether a CPTP map T with T(B) = A and T(D) = D exists.
///
/// The Choi matrix J of T ranges over the affine set cut out by
/// tr_out J = I, T(B) = A and T(D) = D; the question is whether that set meets
/// the PSD cone. The default method maximizes lambda_min(J) over the affine
/// set with a log-barrier Newton scheme: a PSD iterate (after clipping
/// eigenvalues below zero) within feas_tol of the constraints proves
/// feasibility, and a dual matrix Z >= 0 orthogonal to the affine directions
/// with <Z, J> < -feas_tol proves infeasibility. The Dykstra method alternates
/// projections between the two sets and calls a residual plateau above
/// 10 * feas_tol infeasible.
FeasibilityVerdict cptp_feasibility(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d,
                                    const SolverSettings& settings = {});

struct DiagonalFrame {
  HermitianMatrix a;
  HermitianMatrix b;
  WeightVector d;
  ComplexMatrix basis;  // eigenvectors of D as columns; a = basis^* A basis
};

/// Rotates everything into the eigenbasis of D.
DiagonalFrame reduce_to_diagonal(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d);

struct CurveCheck {
  bool holds = true;
  double worst_slack = 0.0;  // min over t of |B - tD|_1 - |A - tD|_1
  double worst_t = 0.0;
  std::size_t evaluations = 0;
};

/// |A - tD|_1 <= |B - tD|_1 sampled at the kinks of both sides, their
/// midpoints, one point past each end and a 512-point grid over the kink hull.
CurveCheck trace_norm_curve_details(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d);
bool trace_norm_curve_check(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d);

class DimensionNot2 : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct QubitCheck {
  bool verdict = false;
  double b1 = 0.0;
  double b2 = 0.0;
  bool traces_match = false;
  bool norms_hold = false;
  /// A - b1 D and b2 D - A positive semidefinite within tolerance.
  bool psd_precondition = false;
  double fidelity_a = 0.0;
  double fidelity_b = 0.0;
  /// Set when the PSD precondition failed; such instances are worth
  /// cross-checking with cptp_feasibility.
  bool flagged = false;
  /// Signed distance to the decision boundary: the smallest of the
  /// whitened-spectrum gaps to [b1, b2] and fidelity_a - fidelity_b.
  double margin = 0.0;
};

/// Closed-form two-level test through the spectrum {b1 <= b2} of
/// D^{-1/2} B D^{-1/2}, trace norms at b1 D, b2 D and the generalized fidelity
/// |sqrt(X - b1 D) sqrt(b2 D - X)|_1.
QubitCheck qubit_dmaj_details(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d);
bool qubit_dmaj_check(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d);

/// Choi matrix of X -> tr(X) D / tr(D); certifies D is below B. Requires tr B = tr D.
ChoiMatrix minimal_element_witness(const HermitianMatrix& b, const GibbsReference& d);

/// (sum d) e_k e_k^T.
HermitianMatrix maximal_element(const WeightVector& d, std::size_t k);

/// Index of the smallest weight, lowest index on ties.
std::size_t maximal_element_index(const WeightVector& d);

/// Whether the maximal candidate D-majorizes B. For diagonal D the candidate is
/// built from its diagonal; otherwise in the eigenbasis of D.
bool maximal_element_check(const HermitianMatrix& b, const GibbsReference& d, const SolverSettings& settings = {});
bool maximal_element_check(const HermitianMatrix& b, const GibbsReference& d, std::size_t k,
                           const SolverSettings& settings = {});

class DisagreementDetected : public std::runtime_error {
 public:
  DisagreementDetected(const std::string& what, FeasibilityStatus matrix_status, bool vector_verdict)
      : std::runtime_error(what), matrix_status(matrix_status), vector_verdict(vector_verdict) {}
  FeasibilityStatus matrix_status;
  bool vector_verdict;
};

/// Runs cptp_feasibility on diag(x), diag(y), diag(d) and d_majorizes on the
/// vectors; returns the shared verdict or throws DisagreementDetected.
bool diagonal_reduction_check(std::span<const double> x, std::span<const double> y, const WeightVector& d,
                              const SolverSettings& settings = {});

}  // namespace gibbsmaj
