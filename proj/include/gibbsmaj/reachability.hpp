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

#include <variant>
#include <vector>

#include "gibbsmaj/matrix_majorization.hpp"
#include "gibbsmaj/random.hpp"
#include "gibbsmaj/vector_majorization.hpp"

namespace gibbsmaj {

/// A set of starting points: finitely many quantum states, or at vector
/// level a d-majorization polytope.
class StateSet {
 public:
  static constexpr double kStateTol = 1e-9;

  /// Every state must be PSD with unit trace within kStateTol.
  static StateSet from_states(std::vector<HermitianMatrix> states);
  static StateSet from_polytope(MajorizationPolytope polytope);

  bool is_polytope() const { return std::holds_alternative<MajorizationPolytope>(repr_); }
  const std::vector<HermitianMatrix>& states() const;
  const MajorizationPolytope& polytope() const;

 private:
  explicit StateSet(std::variant<std::vector<HermitianMatrix>, MajorizationPolytope> repr) : repr_(std::move(repr)) {}
  std::variant<std::vector<HermitianMatrix>, MajorizationPolytope> repr_;
};

/// Whether x lies in the set of matrices D-majorized by rho.
FeasibilityVerdict md_membership(const HermitianMatrix& x, const HermitianMatrix& rho, const GibbsReference& d,
                                 const SolverSettings& settings = {});

/// Union over the members of a state list: Feasible if some member admits a
/// channel, Infeasible if none does, Undecided otherwise. For a polytope set
/// x must be diagonal and membership is the polytope test on its diagonal.
FeasibilityVerdict md_membership(const HermitianMatrix& x, const StateSet& set, const GibbsReference& d,
                                 const SolverSettings& settings = {});

/// Random channel fixing D: a convex mixture of the identity, the constant
/// map onto D / tr D and thermal propagators of H = -log(D / tr D) at T = 1.
ChoiMatrix random_gibbs_fixing_channel(const GibbsReference& d, Rng& rng);

struct StarShapeReport {
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::size_t undecided = 0;
  /// Smallest interior-point margin seen over all checks.
  double worst_margin = 0.0;
};

/// Mixes random members X of M_D(rho) with D / tr D at weights 0.25, 0.5 and
/// 0.75 and checks each mixture is still D-majorized by rho.
StarShapeReport star_shape_probe(const HermitianMatrix& rho, const GibbsReference& d, std::size_t samples, Rng& rng,
                                 const SolverSettings& settings = {});

/// A vector z with M_e(z) containing every classical rearrangement image of
/// M_d(x0); membership of x is classical_majorizes(x, z).
std::vector<double> compose_bound(std::span<const double> x0, const WeightVector& d);

struct HausdorffProbe {
  double set_distance = 0.0;    // 1-norm Hausdorff distance of M_d(x) and M_d(y)
  double point_distance = 0.0;  // |x - y|_1
  bool holds() const { return set_distance <= point_distance + 1e-8; }
};

/// 1-norm distance from a point to a polytope, by linear programming.
double polytope_distance(std::span<const double> point, const MajorizationPolytope& p);

/// Vertices of each polytope against the other one. Requires n <= 4.
HausdorffProbe hausdorff_nonexpansive_probe(std::span<const double> x, std::span<const double> y, const WeightVector& d);

}  // namespace gibbsmaj
