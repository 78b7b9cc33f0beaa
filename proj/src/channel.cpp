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

#include "gibbsmaj/channel.hpp"

#include <algorithm>

namespace gibbsmaj {

ChoiMatrix::ChoiMatrix(HermitianMatrix j, std::size_t input_dim) : j_(std::move(j)), n_(input_dim) {
  if (j_.dim() != n_ * n_) {
    throw DimensionError("ChoiMatrix: expected a " + std::to_string(n_ * n_) + "-dimensional matrix");
  }
}

double ChoiMatrix::positivity_gap() const { return std::max(0.0, -min_eigenvalue(j_)); }

double ChoiMatrix::trace_preservation_residual() const {
  return (partial_trace(j_, n_, n_, Subsystem::kSecond) - ComplexMatrix::identity(n_)).frobenius_norm();
}

ComplexMatrix apply_choi(const ChoiMatrix& j, const ComplexMatrix& x) {
  const std::size_t n = j.input_dim();
  if (x.rows() != n || x.cols() != n) throw DimensionError("apply_choi: input dimension mismatch");
  const ComplexMatrix& m = j.matrix();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex xik = x(i, k);
      if (xik == Complex(0.0)) continue;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out(a, b) += xik * m(i * n + a, k * n + b);
    }
  return out;
}

HermitianMatrix apply_choi(const ChoiMatrix& j, const HermitianMatrix& x) {
  return HermitianMatrix::symmetrized(apply_choi(j, x.matrix()));
}

ChoiMatrix choi_from_map(std::size_t n, const LinearMap& map) {
  ComplexMatrix j(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      ComplexMatrix unit(n, n);
      unit(i, k) = 1.0;
      const ComplexMatrix image = map(unit);
      if (image.rows() != n || image.cols() != n) throw DimensionError("choi_from_map: map changes dimension");
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) j(i * n + a, k * n + b) = image(a, b);
    }
  return ChoiMatrix(HermitianMatrix(std::move(j)), n);
}

ChoiMatrix choi_from_superoperator(const ComplexMatrix& s, std::size_t n) {
  if (s.rows() != n * n || s.cols() != n * n) throw DimensionError("choi_from_superoperator: shape mismatch");
  ComplexMatrix j(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) j(i * n + a, k * n + b) = s(a + b * n, i + k * n);
  return ChoiMatrix(HermitianMatrix::symmetrized(j), n);
}

ChoiMatrix identity_channel(std::size_t n) {
  return choi_from_map(n, [](const ComplexMatrix& x) { return x; });
}

ChoiMatrix constant_channel(const HermitianMatrix& state) {
  return choi_from_map(state.dim(), [&](const ComplexMatrix& x) { return x.trace() * state.matrix(); });
}

ChoiMatrix unitary_channel(const ComplexMatrix& u) {
  const ComplexMatrix u_adj = u.adjoint();
  return choi_from_map(u.rows(), [&](const ComplexMatrix& x) { return u * x * u_adj; });
}

ChoiMatrix kraus_channel(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw std::invalid_argument("kraus_channel: no operators");
  return choi_from_map(kraus.front().rows(), [&](const ComplexMatrix& x) {
    ComplexMatrix out(x.rows(), x.cols());
    for (const auto& k : kraus) out += k * x * k.adjoint();
    return out;
  });
}

ChoiMatrix compose(const ChoiMatrix& second, const ChoiMatrix& first) {
  if (second.input_dim() != first.input_dim()) throw DimensionError("compose: dimension mismatch");
  return choi_from_map(first.input_dim(),
                       [&](const ComplexMatrix& x) { return apply_choi(second, apply_choi(first, x)); });
}

ChoiMatrix mix(std::span<const double> weights, std::span<const ChoiMatrix> channels) {
  if (weights.size() != channels.size() || channels.empty()) throw DimensionError("mix: weight count mismatch");
  const std::size_t n = channels.front().input_dim();
  HermitianMatrix j = HermitianMatrix::zeros(n * n);
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (channels[k].input_dim() != n) throw DimensionError("mix: dimension mismatch");
    j += weights[k] * channels[k].matrix();
  }
  return ChoiMatrix(std::move(j), n);
}

}  // namespace gibbsmaj
