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

#include <cmath>

#include "gibbsmaj/linalg.hpp"
#include "gibbsmaj/random.hpp"
#include "oracles.hpp"

using namespace gibbsmaj;
namespace oracle = gibbsmaj::testing;

TEST_CASE("hermitian construction rejects asymmetric input") {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex(1.0, 1.0);
  m(1, 0) = Complex(1.0, 1.0);
  CHECK_THROWS_AS(HermitianMatrix{m}, NotHermitian);
  m(1, 0) = Complex(1.0, -1.0);
  CHECK_NOTHROW(HermitianMatrix{m});
}

TEST_CASE("shipped D has spectrum {2 - sqrt 2, 2, 2 + sqrt 2}") {
  const auto d = oracle::fixture_matrix("eq1_D.json");
  const auto e = eig_hermitian(d);
  REQUIRE(e.eigenvalues.size() == 3);
  const double r = std::sqrt(2.0);
  CHECK(e.eigenvalues[0] == doctest::Approx(2.0 - r).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e.eigenvalues[2] == doctest::Approx(2.0 + r).epsilon(1e-12));
  const auto poly = oracle::charpoly_eigenvalues3(d);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(poly[k] - e.eigenvalues[k]) < 1e-10);
}

TEST_CASE("trace norm of the shipped A matches the characteristic polynomial") {
  const auto a = oracle::fixture_matrix("eq1_A.json");
  double expected = 0.0;
  for (double l : oracle::charpoly_eigenvalues3(a)) expected += std::abs(l);
  CHECK(trace_norm(a) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(trace_norm(a) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("eigendecomposition reconstructs random hermitian matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto a = random_hermitian(n, rng);
    const auto e = eig_hermitian(a);
    const auto& v = e.eigenvectors;
    const auto rebuilt = v * ComplexMatrix::diagonal(e.eigenvalues) * v.adjoint();
    CHECK((rebuilt - a.matrix()).frobenius_norm() <= 1e-10 * std::max(1.0, a.frobenius_norm()));
    CHECK((v.adjoint() * v - ComplexMatrix::identity(n)).frobenius_norm() <= 1e-10);
    for (std::size_t k = 1; k < n; ++k) CHECK(e.eigenvalues[k - 1] <= e.eigenvalues[k]);
  }
}

TEST_CASE("eigendecomposition is deterministic") {
  Rng rng(5);
  const auto a = random_hermitian(6, rng);
  const auto e1 = eig_hermitian(a);
  const auto e2 = eig_hermitian(a);
  CHECK(e1.eigenvalues == e2.eigenvalues);
  CHECK(e1.eigenvectors == e2.eigenvectors);
}

TEST_CASE("trace norm behaves as a norm") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto a = random_hermitian(n, rng);
    const auto b = random_hermitian(n, rng);
    CHECK(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-10);
    const double c = -3.0 + 0.03 * trial;
    CHECK(trace_norm(c * a) == doctest::Approx(std::abs(c) * trace_norm(a)).epsilon(1e-10));
  }
}

TEST_CASE("trace norm of a general matrix is the sum of singular values") {
  // Singular values of U diag(s) V are s.
  Rng rng(4);
  const auto u = random_unitary(3, rng);
  const auto v = random_unitary(3, rng);
  const std::vector<double> s{2.5, 1.0, 0.25};
  const auto m = u * ComplexMatrix::diagonal(s) * v;
  CHECK(trace_norm(m) == doctest::Approx(3.75).epsilon(1e-10));
}

TEST_CASE("psd square root squares back") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_positive_definite(2 + trial % 5, rng, 0.0, 3.0);
    const auto r = psd_sqrt(p);
    CHECK((r.matrix() * r.matrix() - p.matrix()).frobenius_norm() <= 1e-10);
    CHECK(min_eigenvalue(r) >= -1e-12);
  }
  CHECK_THROWS_AS(psd_sqrt(HermitianMatrix::diagonal(std::vector<double>{1.0, -0.5})), NotPSD);
  CHECK_NOTHROW(psd_sqrt(HermitianMatrix::diagonal(std::vector<double>{1.0, -1e-12})));
}

TEST_CASE("partial trace agrees with index summation and preserves trace") {
  Rng rng(14);
  for (std::size_t p : {2u, 3u}) {
    for (std::size_t q : {2u, 4u}) {
      const auto x = random_hermitian(p * q, rng).matrix();
      const auto tr_second = partial_trace(x, p, q, Subsystem::kSecond);
      const auto tr_first = partial_trace(x, p, q, Subsystem::kFirst);
      CHECK((tr_second - oracle::partial_trace_by_sum(x, p, q, true)).max_abs() <= 1e-12);
      CHECK((tr_first - oracle::partial_trace_by_sum(x, p, q, false)).max_abs() <= 1e-12);
      CHECK(std::abs(tr_second.trace() - x.trace()) <= 1e-12);
      CHECK(std::abs(tr_first.trace() - x.trace()) <= 1e-12);
    }
  }
}

TEST_CASE("partial trace of a product state recovers each factor") {
  Rng rng(15);
  const auto a = random_density_matrix(2, rng).matrix();
  const auto b = random_density_matrix(3, rng).matrix();
  const auto ab = kron(a, b);
  CHECK((partial_trace(ab, 2, 3, Subsystem::kSecond) - a).max_abs() <= 1e-12);
  CHECK((partial_trace(ab, 2, 3, Subsystem::kFirst) - b).max_abs() <= 1e-12);
}

TEST_CASE("matrix exponential inverts under negation") {
  Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(i, j) = Complex(std::normal_distribution<double>()(rng), std::normal_distribution<double>()(rng));
    a *= Complex(1.0 / (a.frobenius_norm() + 1e-300));
    CHECK(oracle::inverse_product_residual(matrix_exp(a), matrix_exp(-a)) <= 1e-9);
  }
}

TEST_CASE("hermitian exponential matches the general one") {
  Rng rng(17);
  const auto h = random_hermitian(4, rng, 0.5);
  CHECK((matrix_exp(h).matrix() - matrix_exp(h.matrix())).max_abs() <= 1e-10);
}

TEST_CASE("random generators honour their contracts") {
  Rng rng(18);
  const auto u = random_unitary(4, rng);
  CHECK((u.adjoint() * u - ComplexMatrix::identity(4)).max_abs() <= 1e-12);
  const auto rho = random_density_matrix(3, rng);
  CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(min_eigenvalue(rho) > 0.0);
  const auto p = random_probability_vector(5, rng);
  double s = 0.0;
  for (double x : p) {
    CHECK(x >= 0.0);
    s += x;
  }
  CHECK(s == doctest::Approx(1.0));
}
