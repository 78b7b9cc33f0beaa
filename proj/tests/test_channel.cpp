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

#include <doctest.h>

#include "gibbsmaj/channel.hpp"
#include "gibbsmaj/random.hpp"
#include "oracles.hpp"

using namespace gibbsmaj;
namespace oracle = gibbsmaj::testing;

namespace {

// Kraus operators of a random channel: blocks of an isometry V (n r x n).
std::vector<ComplexMatrix> random_kraus(std::size_t n, std::size_t r, Rng& rng) {
  const auto u = random_unitary(n * r, rng);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < r; ++k) {
    ComplexMatrix block(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) block(i, j) = u(k * n + i, j);
    kraus.push_back(block);
  }
  return kraus;
}

}  // namespace

TEST_CASE("Choi application agrees with the Kraus sum") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto kraus = random_kraus(n, 1 + trial % 3, rng);
    const auto j = kraus_channel(kraus);
    CHECK(j.is_cptp(1e-10));
    ComplexMatrix x(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        x(a, b) = Complex(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
    CHECK((apply_choi(j, x) - oracle::kraus_apply(kraus, x)).max_abs() <= 1e-12);
  }
}

TEST_CASE("Choi matrix from a map, a superoperator and Kraus operators coincide") {
  Rng rng(32);
  const auto u = random_unitary(3, rng);
  const auto from_map = choi_from_map(3, [&](const ComplexMatrix& x) { return u * x * u.adjoint(); });
  const auto from_kraus = unitary_channel(u);
  const auto from_superop = choi_from_superoperator(kron(u.conjugate(), u), 3);
  CHECK((from_map.matrix() - from_kraus.matrix()).frobenius_norm() <= 1e-12);
  CHECK((from_superop.matrix() - from_kraus.matrix()).frobenius_norm() <= 1e-12);
}

TEST_CASE("identity and constant channels") {
  Rng rng(33);
  const auto rho = random_density_matrix(3, rng);
  const auto x = random_hermitian(3, rng);
  CHECK((apply_choi(identity_channel(3), x) - x).frobenius_norm() <= 1e-14);
  const auto c = constant_channel(rho);
  CHECK(c.is_cptp(1e-12));
  CHECK((apply_choi(c, x) - x.trace() * rho).frobenius_norm() <= 1e-12);
}

TEST_CASE("transposition is positive and trace preserving but not completely positive") {
  const auto t = choi_from_map(2, [](const ComplexMatrix& x) { return x.transpose(); });
  CHECK(t.trace_preservation_residual() <= 1e-14);
  CHECK(t.positivity_gap() == doctest::Approx(1.0));
  CHECK_FALSE(t.is_cptp(1e-6));
}

TEST_CASE("composition and mixing follow the Kraus picture") {
  Rng rng(34);
  const auto k1 = random_kraus(2, 2, rng);
  const auto k2 = random_kraus(2, 3, rng);
  const auto c1 = kraus_channel(k1);
  const auto c2 = kraus_channel(k2);
  const auto x = random_hermitian(2, rng);
  const auto composed = compose(c2, c1);
  CHECK((apply_choi(composed, x).matrix() - oracle::kraus_apply(k2, oracle::kraus_apply(k1, x))).max_abs() <= 1e-12);
  const std::vector<double> w{0.3, 0.7};
  const std::vector<ChoiMatrix> parts{c1, c2};
  const auto mixed = mix(w, parts);
  CHECK(mixed.is_cptp(1e-10));
  const auto expected = 0.3 * apply_choi(c1, x) + 0.7 * apply_choi(c2, x);
  CHECK((apply_choi(mixed, x) - expected).frobenius_norm() <= 1e-12);
}

TEST_CASE("Choi matrix shape is validated") {
  CHECK_THROWS_AS(ChoiMatrix(HermitianMatrix::identity(5), 2), DimensionError);
  CHECK_THROWS_AS(apply_choi(identity_channel(2), ComplexMatrix::identity(3)), DimensionError);
}
