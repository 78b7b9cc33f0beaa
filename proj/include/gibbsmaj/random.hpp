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

#include <random>
#include <vector>

#include "gibbsmaj/linalg.hpp"

namespace gibbsmaj {

using Rng = std::mt19937_64;

/// Entries with standard-normal real and imaginary parts, symmetrized.
HermitianMatrix random_hermitian(std::size_t n, Rng& rng, double scale = 1.0);

/// Haar-distributed unitary via QR of a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

/// Full-rank density matrix G G^* / tr(G G^*) with G complex Gaussian.
HermitianMatrix random_density_matrix(std::size_t n, Rng& rng);

/// Positive definite matrix with eigenvalues drawn from [lo, hi] in a Haar basis.
HermitianMatrix random_positive_definite(std::size_t n, Rng& rng, double lo = 0.2, double hi = 2.0);

/// Entries uniform in [lo, hi].
std::vector<double> random_positive_vector(std::size_t n, Rng& rng, double lo = 0.1, double hi = 1.0);

/// Uniform point on the probability simplex.
std::vector<double> random_probability_vector(std::size_t n, Rng& rng);

/// Random d-stochastic matrix (A >= 0, A d = d, e^T A = e^T).
/// Sinkhorn scaling of a random positive matrix towards row and column sums d
/// (for A diag(d)). `sharpness` > 1 pushes samples toward the polytope boundary.
RealMatrix random_d_stochastic(const std::vector<double>& d, Rng& rng, double sharpness = 1.0);

}  // namespace gibbsmaj
