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

#include "gibbsmaj/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gibbsmaj::lp {

void Problem::add_eq(std::vector<double> row, double rhs) {
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void Problem::add_ub(std::vector<double> row, double rhs) {
  ub_rows.push_back(std::move(row));
  ub_rhs.push_back(rhs);
}

namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kMaxPivots = 200000;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * (cols + 1)), basis_(rows) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return a_[i * (cols_ + 1) + cols_]; }
  double rhs(std::size_t i) const { return a_[i * (cols_ + 1) + cols_]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) a_[r * (cols_ + 1) + j] /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) a_[i * (cols_ + 1) + j] -= f * a_[r * (cols_ + 1) + j];
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
             a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

// Minimizes cost over columns [0, active_cols) from the current basis.
// Returns false when unbounded.
bool run_simplex(Tableau& t, const std::vector<double>& cost, std::size_t active_cols, int& pivots) {
  const std::size_t m = t.rows();
  while (true) {
    std::size_t entering = active_cols;
    for (std::size_t j = 0; j < active_cols; ++j) {
      if (std::find(t.basis().begin(), t.basis().end(), j) != t.basis().end()) continue;
      double reduced = cost[j];
      for (std::size_t i = 0; i < m; ++i) reduced -= cost[t.basis()[i]] * t.at(i, j);
      if (reduced < -1e-10) {
        entering = j;
        break;
      }
    }
    if (entering == active_cols) return true;

    std::size_t leaving = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double coef = t.at(i, entering);
      if (coef <= kPivotTol) continue;
      const double ratio = t.rhs(i) / coef;
      if (ratio < best_ratio - 1e-12 ||
          (std::abs(ratio - best_ratio) <= 1e-12 && leaving < m && t.basis()[i] < t.basis()[leaving])) {
        best_ratio = ratio;
        leaving = i;
      }
    }
    if (leaving == m) return false;
    t.pivot(leaving, entering);
    if (++pivots > kMaxPivots) throw CyclingGuardExceeded("simplex exceeded the pivot limit");
  }
}

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  auto is_free = [&](std::size_t j) { return !problem.free_vars.empty() && problem.free_vars[j]; };

  // Column layout: structural (free vars split into +/-), slacks, artificials.
  std::vector<std::size_t> plus_col(n), minus_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus_col[j] = cols++;
    if (is_free(j)) minus_col[j] = cols++;
  }
  const std::size_t structural = cols;
  const std::size_t num_eq = problem.eq_rows.size();
  const std::size_t num_ub = problem.ub_rows.size();
  const std::size_t m = num_eq + num_ub;
  const std::size_t slack_begin = structural;
  const std::size_t art_begin = slack_begin + num_ub;
  const std::size_t total_cols = art_begin + m;

  Tableau t(m, total_cols);
  double rhs_scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) {
    const bool eq = r < num_eq;
    const auto& row = eq ? problem.eq_rows[r] : problem.ub_rows[r - num_eq];
    const double b = eq ? problem.eq_rhs[r] : problem.ub_rhs[r - num_eq];
    const double sign = b < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(r, plus_col[j]) = sign * row[j];
      if (minus_col[j] != SIZE_MAX) t.at(r, minus_col[j]) = -sign * row[j];
    }
    if (!eq) t.at(r, slack_begin + (r - num_eq)) = sign;
    t.at(r, art_begin + r) = 1.0;
    t.rhs(r) = sign * b;
    rhs_scale = std::max(rhs_scale, std::abs(b));
    t.basis()[r] = art_begin + r;
  }

  Solution sol;
  std::vector<double> phase1(total_cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) phase1[art_begin + r] = 1.0;
  run_simplex(t, phase1, total_cols, sol.pivots);

  double art_sum = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basis()[i] >= art_begin) art_sum += t.rhs(i);
  sol.infeasibility = art_sum / rhs_scale;
  if (sol.infeasibility > 1e-9) {
    sol.status = Status::kInfeasible;
    return sol;
  }

  // Drive zero-level artificials out of the basis; rows with no usable pivot are redundant.
  for (std::size_t i = 0; i < t.rows();) {
    if (t.basis()[i] < art_begin) {
      ++i;
      continue;
    }
    std::size_t col = art_begin;
    for (std::size_t j = 0; j < art_begin; ++j) {
      if (std::abs(t.at(i, j)) > 1e-9) {
        col = j;
        break;
      }
    }
    if (col == art_begin) {
      t.drop_row(i);
    } else {
      t.pivot(i, col);
      ++i;
    }
  }

  std::vector<double> cost(total_cols, 0.0);
  if (!problem.objective.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[plus_col[j]] = problem.objective[j];
      if (minus_col[j] != SIZE_MAX) cost[minus_col[j]] = -problem.objective[j];
    }
  }
  if (!run_simplex(t, cost, art_begin, sol.pivots)) {
    sol.status = Status::kUnbounded;
    return sol;
  }

  std::vector<double> values(total_cols, 0.0);
  for (std::size_t i = 0; i < t.rows(); ++i) values[t.basis()[i]] = std::max(0.0, t.rhs(i));
  sol.x.assign(n, 0.0);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = values[plus_col[j]] - (minus_col[j] != SIZE_MAX ? values[minus_col[j]] : 0.0);
    if (!problem.objective.empty()) sol.objective += problem.objective[j] * sol.x[j];
  }
  sol.status = Status::kOptimal;
  return sol;
}

}  // namespace gibbsmaj::lp
