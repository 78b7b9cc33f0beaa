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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gibbsmaj/lp.hpp"
#include "gibbsmaj/random.hpp"
#include "gibbsmaj/vector_majorization.hpp"
#include "oracles.hpp"

using namespace gibbsmaj;
namespace oracle = gibbsmaj::testing;

namespace {

std::vector<double> scaled_to(std::vector<double> v, double total) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x *= total / s;
  return v;
}

// Random pair: y arbitrary, x either a d-stochastic image of y or a rescaled
// random vector with the same sum.
std::pair<std::vector<double>, std::vector<double>> random_pair(const WeightVector& d, Rng& rng) {
  const std::size_t n = d.size();
  auto y = random_positive_vector(n, rng, 0.0, 1.0);
  if (std::bernoulli_distribution(0.5)(rng)) {
    return {random_d_stochastic(d.values(), rng, 3.0).apply(y), y};
  }
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  return {scaled_to(random_positive_vector(n, rng, 0.0, 1.0), total), y};
}

}  // namespace

TEST_CASE("weight vectors must be strictly positive") {
  CHECK_THROWS_AS(WeightVector({1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector(std::vector<double>{}), std::invalid_argument);
  CHECK(WeightVector({1.0, 0.5, 0.25}).sum() == doctest::Approx(1.75));
}

TEST_CASE("classical majorization textbook cases") {
  const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const std::vector<double> peaked{1.0, 0.0, 0.0};
  CHECK(classical_majorizes(uniform, peaked));
  CHECK_FALSE(classical_majorizes(peaked, uniform));
  CHECK(classical_majorizes(peaked, peaked));
  CHECK_FALSE(classical_majorizes(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.5}));
}

TEST_CASE("classical majorization agrees with the permutation hull") {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 4;
    auto y = random_probability_vector(n, rng);
    std::vector<double> x;
    if (trial % 2 == 0) {
      x = random_d_stochastic(std::vector<double>(n, 1.0), rng, 2.0).apply(y);
    } else {
      x = random_probability_vector(n, rng);
    }
    CHECK(classical_majorizes(x, y) == oracle::permutation_hull_contains(x, y));
  }
}

TEST_CASE("uniform weights recover classical majorization") {
  Rng rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto e = WeightVector::uniform(n);
    const auto [x, y] = random_pair(e, rng);
    CHECK(d_majorizes(x, y, e) == classical_majorizes(x, y));
  }
}

TEST_CASE("d-majorization agrees with the d-stochastic witness LP") {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const WeightVector d(random_positive_vector(n, rng, 0.1, 1.0));
    const auto [x, y] = random_pair(d, rng);
    const auto witness = d_stochastic_witness(x, y, d);
    REQUIRE(d_majorizes(x, y, d) == witness.has_value());
    if (witness) {
      CHECK(is_d_stochastic(*witness, d));
      const auto image = witness->apply(y);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(image[i] - x[i]) <= 1e-8);
    }
  }
}

TEST_CASE("d-majorization requires equal sums") {
  const WeightVector d({1.0, 0.5});
  CHECK_FALSE(d_majorizes(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.5}, d));
  CHECK_THROWS_AS(d_majorizes(std::vector<double>{1.0}, std::vector<double>{1.0, 0.0}, d), DimensionError);
}

TEST_CASE("shipped vector fixtures: x is a mix of y and the rescaled weights") {
  const auto x = oracle::fixture_vector("vec_x.json");
  const auto y = oracle::fixture_vector("vec_y.json");
  const WeightVector d(oracle::fixture_vector("vec_d.json"));
  CHECK(d_majorizes(x, y, d));
  CHECK_FALSE(d_majorizes(y, x, d));
}

TEST_CASE("d-majorization is a preorder via witness composition") {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const WeightVector d(random_positive_vector(n, rng, 0.1, 1.0));
    const auto y = random_positive_vector(n, rng, 0.0, 1.0);
    CHECK(d_majorizes(y, y, d));
    const auto a1 = random_d_stochastic(d.values(), rng, 2.0);
    const auto a2 = random_d_stochastic(d.values(), rng, 2.0);
    const auto x1 = a1.apply(y);
    const auto x2 = a2.apply(x1);
    CHECK(d_majorizes(x1, y, d));
    CHECK(d_majorizes(x2, x1, d));
    const auto composed = a2 * a1;
    CHECK(is_d_stochastic(composed, d));
    CHECK(d_majorizes(x2, y, d));
  }
}

TEST_CASE("d-majorization is not antisymmetric") {
  // With d = e every permutation of y is equivalent to y.
  const auto e = WeightVector::uniform(3);
  const std::vector<double> y{0.6, 0.3, 0.1};
  std::vector<double> x = y;
  bool found = false;
  std::sort(x.begin(), x.end());
  do {
    if (x != y && d_majorizes(x, y, e) && d_majorizes(y, x, e)) found = true;
  } while (std::next_permutation(x.begin(), x.end()));
  CHECK(found);
}

TEST_CASE("d-majorization is invariant under rescaling d") {
  Rng rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto raw = random_positive_vector(n, rng, 0.1, 1.0);
    const auto [x, y] = random_pair(WeightVector(raw), rng);
    const double c = std::exp(std::uniform_real_distribution<double>(-5.0, 5.0)(rng));
    std::vector<double> scaled = raw;
    for (double& v : scaled) v *= c;
    CHECK(d_majorizes(x, y, WeightVector(raw)) == d_majorizes(x, y, WeightVector(scaled)));
  }
}

TEST_CASE("polytope rows follow the sign-vector layout") {
  const auto p = polytope_inequalities({0.2, 0.5, 0.3}, WeightVector({1.0, 0.5, 0.25}));
  CHECK(p.row_count() == 8);
  CHECK(p.sign_row(0) == std::vector<int>{1, 1, 1});
  CHECK(p.sign_row(7) == std::vector<int>{-1, -1, -1});
  CHECK(p.sign_row(5) == std::vector<int>{-1, 1, -1});
  // The all-plus and all-minus rows pin the sum.
  CHECK(p.bounds()[0] == doctest::Approx(1.0));
  CHECK(p.bounds()[7] == doctest::Approx(-1.0));
}

TEST_CASE("polytope membership agrees with d-majorization") {
  Rng rng(26);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const WeightVector d(random_positive_vector(n, rng, 0.1, 1.0));
    const auto [x, y] = random_pair(d, rng);
    const auto p = polytope_inequalities(y, d);
    CHECK(p.contains(x) == d_majorizes(x, y, d));
  }
}

TEST_CASE("segment M_e((1,0)) has vertices (1,0) and (0,1)") {
  const auto p = polytope_inequalities({1.0, 0.0}, WeightVector::uniform(2));
  auto vertices = polytope_vertices(p);
  std::sort(vertices.begin(), vertices.end());
  REQUIRE(vertices.size() == 2);
  CHECK(vertices[0][0] == doctest::Approx(0.0));
  CHECK(vertices[0][1] == doctest::Approx(1.0));
  CHECK(vertices[1][0] == doctest::Approx(1.0));
  CHECK(vertices[1][1] == doctest::Approx(0.0));
  CHECK(p.contains(std::vector<double>{0.5, 0.5}));
}

TEST_CASE("polytope vertices are members and the maximizer dominates them") {
  Rng rng(27);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const WeightVector d(random_positive_vector(n, rng, 0.1, 1.0));
    const auto y = random_positive_vector(n, rng, 0.0, 1.0);
    const auto p = polytope_inequalities(y, d);
    const auto z = classical_maximizer(y, d);
    CHECK(p.contains(z));
    for (const auto& v : polytope_vertices(p)) {
      CHECK(d_majorizes(v, y, d));
      CHECK(classical_majorizes(v, z));
    }
    for (int k = 0; k < 50; ++k) {
      const auto member = random_d_stochastic(d.values(), rng, 3.0).apply(y);
      CHECK(classical_majorizes(member, z));
    }
  }
}

TEST_CASE("classical maximizer is deterministic and sized") {
  const std::vector<double> y{0.2, 0.5, 0.3};
  const WeightVector d({1.0, 0.5, 0.25});
  CHECK(classical_maximizer(y, d) == classical_maximizer(y, d));
  CHECK(classical_maximizer(y, d).size() == 3);
  CHECK_THROWS_AS(polytope_vertices(polytope_inequalities(std::vector<double>(6, 1.0), WeightVector::uniform(6))),
                  PolytopeTooLarge);
}

TEST_CASE("random d-stochastic matrices are d-stochastic") {
  Rng rng(28);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightVector d(random_positive_vector(4, rng, 0.1, 1.0));
    CHECK(is_d_stochastic(random_d_stochastic(d.values(), rng, 1.0 + trial % 4), d));
  }
}

TEST_CASE("LP solver basic statuses") {
  lp::Problem feasible(2);
  feasible.objective = {1.0, 1.0};
  feasible.add_eq({1.0, 2.0}, 2.0);
  const auto s = lp::solve(feasible);
  REQUIRE(s.status == lp::Status::kOptimal);
  CHECK(s.objective == doctest::Approx(1.0));

  lp::Problem infeasible(1);
  infeasible.add_eq({1.0}, -1.0);
  CHECK(lp::solve(infeasible).status == lp::Status::kInfeasible);

  lp::Problem unbounded(1);
  unbounded.objective = {-1.0};
  CHECK(lp::solve(unbounded).status == lp::Status::kUnbounded);
}
