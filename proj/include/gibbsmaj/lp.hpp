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

#include <stdexcept>
#include <vector>

namespace gibbsmaj::lp {

class CyclingGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// minimize c^T x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x_j >= 0 unless free.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;  // empty means the zero objective
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ub_rows;
  std::vector<double> ub_rhs;
  std::vector<bool> free_vars;  // empty means all non-negative

  explicit Problem(std::size_t n = 0) : num_vars(n) {}
  void add_eq(std::vector<double> row, double rhs);
  void add_ub(std::vector<double> row, double rhs);
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
  /// Phase-one optimum: sum of artificial variables, scaled by the rhs size.
  double infeasibility = 0.0;
};

/// Dense two-phase tableau simplex with Bland's rule.
Solution solve(const Problem& problem);

}  // namespace gibbsmaj::lp
