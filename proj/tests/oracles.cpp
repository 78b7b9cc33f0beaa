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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gibbsmaj/io.hpp"
#include "gibbsmaj/lp.hpp"
#include "gibbsmaj/reachability.hpp"

namespace gibbsmaj::testing {

std::array<double, 3> charpoly_eigenvalues3(const ComplexMatrix& a) {
  // det(lambda I - A) = lambda^3 - c2 lambda^2 + c1 lambda - c0.
  const Complex tr = a(0, 0) + a(1, 1) + a(2, 2);
  Complex minors = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) minors += a(i, i) * a(j, j) - a(i, j) * a(j, i);
  const Complex det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                      a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                      a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  const double c2 = tr.real(), c1 = minors.real(), c0 = det.real();
  // Depressed cubic in mu = lambda - c2 / 3: mu^3 + p mu + q = 0.
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = -2.0 * c2 * c2 * c2 / 27.0 + c2 * c1 / 3.0 - c0;
  std::array<double, 3> out{};
  if (std::abs(p) < 1e-300) {
    out.fill(shift + std::cbrt(-q));
    return out;
  }
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
  const double phi = std::acos(arg) / 3.0;
  for (int k = 0; k < 3; ++k) out[k] = shift + r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
  std::sort(out.begin(), out.end());
  return out;
}

ComplexMatrix kraus_apply(std::span<const ComplexMatrix> kraus, const ComplexMatrix& x) {
  ComplexMatrix out(x.rows(), x.cols());
  for (const auto& k : kraus) {
    const std::size_t n = k.rows();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) s += k(a, i) * x(i, j) * std::conj(k(b, j));
        out(a, b) += s;
      }
  }
  return out;
}

ComplexMatrix partial_trace_by_sum(const ComplexMatrix& x, std::size_t first, std::size_t second, bool trace_second) {
  const std::size_t keep = trace_second ? first : second;
  ComplexMatrix out(keep, keep);
  for (std::size_t i = 0; i < keep; ++i)
    for (std::size_t j = 0; j < keep; ++j) {
      Complex s = 0.0;
      const std::size_t traced = trace_second ? second : first;
      for (std::size_t k = 0; k < traced; ++k) {
        s += trace_second ? x(i * second + k, j * second + k) : x(k * second + i, k * second + j);
      }
      out(i, j) = s;
    }
  return out;
}

bool permutation_hull_contains(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<double>> points;
  do {
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = y[perm[i]];
    points.push_back(std::move(p));
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Weights w >= 0 with sum w = 1 and sum w_k p_k = x.
  lp::Problem prob(points.size());
  std::vector<double> ones(points.size(), 1.0);
  prob.add_eq(ones, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) row[k] = points[k][i];
    prob.add_eq(row, x[i]);
  }
  return lp::solve(prob).status == lp::Status::kOptimal;
}

double unitary_covariance_residual_superop(const ComplexMatrix& u, const ComplexMatrix& h) {
  const std::size_t n = u.rows();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix phi = kron(u.conjugate(), u);
  const ComplexMatrix ad = kron(id, h) - kron(h.transpose(), id);
  const ComplexMatrix gap = phi * ad - ad * phi;
  double worst = 0.0;
  const double r = 1.0 / std::sqrt(2.0);
  auto column_norm = [&](const std::vector<std::pair<std::size_t, Complex>>& entries) {
    double s = 0.0;
    for (std::size_t row = 0; row < n * n; ++row) {
      Complex v = 0.0;
      for (const auto& [col, c] : entries) v += gap(row, col) * c;
      s += std::norm(v);
    }
    worst = std::max(worst, std::sqrt(s));
  };
  // vec index of entry (i, j) under column stacking is i + j n.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (i == j) {
        column_norm({{i + i * n, 1.0}});
        continue;
      }
      column_norm({{i + j * n, r}, {j + i * n, r}});
      column_norm({{i + j * n, Complex(0.0, r)}, {j + i * n, Complex(0.0, -r)}});
    }
  return worst;
}

double inverse_product_residual(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x * y - ComplexMatrix::identity(x.rows())).frobenius_norm();
}

std::string fixture_path(const std::string& name) { return std::string(GIBBSMAJ_FIXTURES) + "/" + name; }

HermitianMatrix fixture_matrix(const std::string& name) {
  return HermitianMatrix(io::parse_matrix(io::read_json_file(fixture_path(name))).matrix);
}

std::vector<double> fixture_vector(const std::string& name) {
  return io::parse_vector(io::read_json_file(fixture_path(name))).values;
}

Triple random_triple(std::size_t n, Rng& rng) {
  const GibbsReference d(random_positive_definite(n, rng, 0.2, 2.0));
  const HermitianMatrix b = random_hermitian(n, rng);
  HermitianMatrix a;
  if (std::bernoulli_distribution(0.5)(rng)) {
    a = apply_choi(random_gibbs_fixing_channel(d, rng), b);
  } else {
    a = random_hermitian(n, rng);
    a += ((b.trace() - a.trace()) / static_cast<double>(n)) * HermitianMatrix::identity(n);
  }
  return {a, b, d.matrix()};
}

std::vector<double> decreasing(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace gibbsmaj::testing
