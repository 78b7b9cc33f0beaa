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

#include "gibbsmaj/random.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gibbsmaj {

namespace {

ComplexMatrix gaussian_matrix(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

}  // namespace

HermitianMatrix random_hermitian(std::size_t n, Rng& rng, double scale) {
  const ComplexMatrix g = gaussian_matrix(n, rng);
  return HermitianMatrix::symmetrized((0.5 * scale) * (g + g.adjoint()));
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  // Modified Gram-Schmidt on the columns; dividing by the positive norm
  // fixes the R-diagonal phases, which is what makes the result Haar.
  ComplexMatrix q = gaussian_matrix(n, rng);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, j)) * q(i, k);
      for (std::size_t i = 0; i < n; ++i) q(i, k) -= proj * q(i, j);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, k));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, k) /= norm;
  }
  return q;
}

HermitianMatrix random_density_matrix(std::size_t n, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(n, rng);
  HermitianMatrix rho = HermitianMatrix::symmetrized(g * g.adjoint());
  rho *= 1.0 / rho.trace();
  return rho;
}

HermitianMatrix random_positive_definite(std::size_t n, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  std::vector<double> spectrum(n);
  for (double& l : spectrum) l = uniform(rng);
  return conjugate_by(random_unitary(n, rng), HermitianMatrix::diagonal(spectrum));
}

std::vector<double> random_positive_vector(std::size_t n, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> uniform(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = uniform(rng);
  return v;
}

std::vector<double> random_probability_vector(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(n);
  for (double& x : v) x = expo(rng);
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= s;
  return v;
}

RealMatrix random_d_stochastic(const std::vector<double>& d, Rng& rng, double sharpness) {
  const std::size_t n = d.size();
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> b(n * n);
  // Sinkhorn towards row sums d and column sums d; A = B diag(d)^{-1}. Near
  // decomposable draws converge too slowly to reach the tolerance and are redrawn.
  for (bool converged = false; !converged;) {
    for (double& x : b) x = std::max(std::pow(uniform(rng), sharpness), 1e-8);
    for (int iter = 0; iter < 20000 && !converged; ++iter) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += b[i * n + j];
        for (std::size_t j = 0; j < n; ++j) b[i * n + j] *= d[i] / s;
      }
      double worst = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += b[i * n + j];
        worst = std::max(worst, std::abs(s - d[j]) / d[j]);
        for (std::size_t i = 0; i < n; ++i) b[i * n + j] *= d[j] / s;
      }
      converged = worst < 1e-13;
    }
  }
  RealMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = b[i * n + j] / d[j];
  return a;
}

}  // namespace gibbsmaj
