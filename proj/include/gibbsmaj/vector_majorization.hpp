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
#include <span>
#include <stdexcept>
#include <vector>

#include "gibbsmaj/linalg.hpp"

namespace gibbsmaj {

/// Strictly positive weight vector d. Defines the fixed point D = diag(d).
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> d);
  static WeightVector uniform(std::size_t n) { return WeightVector(std::vector<double>(n, 1.0)); }

  std::size_t size() const { return d_.size(); }
  double operator[](std::size_t i) const { return d_[i]; }
  const std::vector<double>& values() const { return d_; }
  double sum() const;
  double min() const;

 private:
  std::vector<double> d_;
};

class PolytopeTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NoMaximizerFound : public std::runtime_error {
 public:
  NoMaximizerFound(const std::string& what, std::vector<double> candidate, std::vector<double> vertex)
      : std::runtime_error(what), candidate(std::move(candidate)), vertex(std::move(vertex)) {}
  std::vector<double> candidate;
  std::vector<double> vertex;
};

/// True iff x is majorized by y: equal sums and dominated decreasing partial sums.
bool classical_majorizes(std::span<const double> x, std::span<const double> y);

/// True iff x is d-majorized by y, using the 1-norm test
///   sum x = sum y  and  |d_i x - y_i d|_1 <= |d_i y - y_i d|_1  for all i.
bool d_majorizes(std::span<const double> x, std::span<const double> y, const WeightVector& d);

/// A >= 0, A d = d and e^T A = e^T, each to 1e-10.
bool is_d_stochastic(const RealMatrix& a, const WeightVector& d);

/// Finds a d-stochastic A with A y = x by linear programming, or nothing.
std::optional<RealMatrix> d_stochastic_witness(std::span<const double> x, std::span<const double> y,
                                               const WeightVector& d);

/// The set {x : x d-majorized by y} as M x <= b(y), one row per sign vector.
/// Row k has entry j equal to -1 when bit j of k is set and +1 otherwise, so
/// row 0 is e^T and the last row is -e^T.
class MajorizationPolytope {
 public:
  static constexpr std::size_t kMaxDim = 12;

  MajorizationPolytope(std::vector<double> y, WeightVector d);

  std::size_t dim() const { return y_.size(); }
  std::size_t row_count() const { return bounds_.size(); }
  std::vector<int> sign_row(std::size_t k) const;
  double row_dot(std::size_t k, std::span<const double> x) const;
  const std::vector<double>& bounds() const { return bounds_; }
  const std::vector<double>& reference() const { return y_; }
  const WeightVector& weights() const { return d_; }

  /// Largest violation max_k (row_k . x - b_k), <= 0 for members.
  double max_violation(std::span<const double> x) const;
  bool contains(std::span<const double> x) const;
  double tolerance() const { return tol_; }

 private:
  std::vector<double> y_;
  WeightVector d_;
  std::vector<double> bounds_;
  double tol_;
};

MajorizationPolytope polytope_inequalities(std::vector<double> y, const WeightVector& d);

/// Vertices by active-set enumeration. Requires dim() <= 5.
std::vector<std::vector<double>> polytope_vertices(const MajorizationPolytope& p);

/// A vertex z of M_d(y) that classically majorizes every vertex, hence every
/// member. Ties go to the lexicographically largest decreasing rearrangement.
std::vector<double> classical_maximizer(std::span<const double> y, const WeightVector& d);

}  // namespace gibbsmaj
