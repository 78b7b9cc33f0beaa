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

#include <functional>
#include <span>

#include "gibbsmaj/linalg.hpp"

namespace gibbsmaj {

/// Choi matrix J = sum_ij |i><j| (x) T(|i><j|) of a map T on n x n matrices.
/// Input factor first, output factor second; T is trace preserving iff
/// tracing out the output factor gives the identity.
class ChoiMatrix {
 public:
  ChoiMatrix(HermitianMatrix j, std::size_t input_dim);

  std::size_t input_dim() const { return n_; }
  const HermitianMatrix& matrix() const { return j_; }

  /// max(0, -lambda_min(J)).
  double positivity_gap() const;
  /// |tr_out J - I|_F.
  double trace_preservation_residual() const;
  /// Both of the above; zero for an exact CPTP map.
  double cptp_residual() const { return std::max(positivity_gap(), trace_preservation_residual()); }
  bool is_cptp(double tol) const { return cptp_residual() <= tol; }

 private:
  HermitianMatrix j_;
  std::size_t n_;
};

using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// T(X)_ab = sum_ij X_ij J_(i,a),(j,b).
ComplexMatrix apply_choi(const ChoiMatrix& j, const ComplexMatrix& x);
HermitianMatrix apply_choi(const ChoiMatrix& j, const HermitianMatrix& x);

/// Choi matrix of a hermiticity-preserving map given as a callable.
ChoiMatrix choi_from_map(std::size_t n, const LinearMap& map);

/// Choi matrix of X -> unvec(S vec(X)), vec stacking columns.
ChoiMatrix choi_from_superoperator(const ComplexMatrix& s, std::size_t n);

ChoiMatrix identity_channel(std::size_t n);
/// X -> tr(X) * state.
ChoiMatrix constant_channel(const HermitianMatrix& state);
/// X -> U X U^*.
ChoiMatrix unitary_channel(const ComplexMatrix& u);
/// X -> sum_k K_k X K_k^*.
ChoiMatrix kraus_channel(std::span<const ComplexMatrix> kraus);

/// second o first.
ChoiMatrix compose(const ChoiMatrix& second, const ChoiMatrix& first);
/// sum_k w_k T_k. Weights are not normalized.
ChoiMatrix mix(std::span<const double> weights, std::span<const ChoiMatrix> channels);

}  // namespace gibbsmaj
