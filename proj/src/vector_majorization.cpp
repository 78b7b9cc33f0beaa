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

#include "gibbsmaj/vector_majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "gibbsmaj/lp.hpp"

namespace gibbsmaj {

namespace {

double l1(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": length mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

std::vector<double> sorted_decreasing(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

// Solves the square system m z = rhs in place; false if numerically singular.
bool solve_square(std::vector<double> m, std::vector<double> rhs, std::size_t n, std::vector<double>& z) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    if (std::abs(m[piv * n + col]) < 1e-10) return false;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
      std::swap(rhs[piv], rhs[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r * n + col] / m[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
      rhs[r] -= f * rhs[col];
    }
  }
  z.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m[i * n + j] * z[j];
    z[i] = s / m[i * n + i];
  }
  return true;
}

}  // namespace

WeightVector::WeightVector(std::vector<double> d) : d_(std::move(d)) {
  if (d_.empty()) throw std::invalid_argument("weight vector must be non-empty");
  for (double x : d_) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("weight vector entries must be strictly positive");
  }
}

double WeightVector::sum() const { return gibbsmaj::sum(d_); }
double WeightVector::min() const { return *std::min_element(d_.begin(), d_.end()); }

bool classical_majorizes(std::span<const double> x, std::span<const double> y) {
  require_same_length(x.size(), y.size(), "classical_majorizes");
  const double tol = 1e-10 * (1.0 + l1(y));
  const auto xs = sorted_decreasing(x);
  const auto ys = sorted_decreasing(y);
  double px = 0.0;
  double py = 0.0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    px += xs[k];
    py += ys[k];
    if (px > py + tol) return false;
  }
  return std::abs(sum(x) - sum(y)) <= tol;
}

bool d_majorizes(std::span<const double> x, std::span<const double> y, const WeightVector& d) {
  require_same_length(x.size(), y.size(), "d_majorizes");
  require_same_length(x.size(), d.size(), "d_majorizes");
  const std::size_t n = x.size();
  if (std::abs(sum(x) - sum(y)) > 1e-10 * (1.0 + l1(y))) return false;
  const double tol = 1e-10 * (1.0 + l1(y) * l1(d.values()));
  for (std::size_t i = 0; i < n; ++i) {
    double lhs = 0.0;
    double rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      lhs += std::abs(d[i] * x[j] - y[i] * d[j]);
      rhs += std::abs(d[i] * y[j] - y[i] * d[j]);
    }
    if (lhs > rhs + tol) return false;
  }
  return true;
}

bool is_d_stochastic(const RealMatrix& a, const WeightVector& d) {
  constexpr double kTol = 1e-10;
  const std::size_t n = d.size();
  if (a.rows() != n || a.cols() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    double fixed = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) < -kTol) return false;
      fixed += a(i, j) * d[j];
    }
    if (std::abs(fixed - d[i]) > kTol) return false;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += a(i, j);
    if (std::abs(col - 1.0) > kTol) return false;
  }
  return true;
}

std::optional<RealMatrix> d_stochastic_witness(std::span<const double> x, std::span<const double> y,
                                               const WeightVector& d) {
  require_same_length(x.size(), y.size(), "d_stochastic_witness");
  require_same_length(x.size(), d.size(), "d_stochastic_witness");
  const std::size_t n = x.size();
  // Variable A_ij sits at index i * n + j.
  lp::Problem problem(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> fixed(n * n, 0.0), image(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      fixed[i * n + j] = d[j];
      image[i * n + j] = y[j];
    }
    problem.add_eq(std::move(fixed), d[i]);
    problem.add_eq(std::move(image), x[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> column(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) column[i * n + j] = 1.0;
    problem.add_eq(std::move(column), 1.0);
  }
  const lp::Solution sol = lp::solve(problem);
  if (sol.status != lp::Status::kOptimal) return std::nullopt;
  RealMatrix a(n, n, sol.x);
  return a;
}

MajorizationPolytope::MajorizationPolytope(std::vector<double> y, WeightVector d)
    : y_(std::move(y)), d_(std::move(d)) {
  const std::size_t n = y_.size();
  require_same_length(n, d_.size(), "polytope_inequalities");
  if (n > kMaxDim) {
    throw PolytopeTooLarge("polytope_inequalities: dimension " + std::to_string(n) + " exceeds " +
                           std::to_string(kMaxDim));
  }
  // Kink points t_i = y_i / d_i of t -> |y - t d|_1.
  std::vector<double> kinks(n), norms(n);
  double max_kink = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kinks[i] = y_[i] / d_[i];
    max_kink = std::max(max_kink, std::abs(kinks[i]));
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::abs(y_[j] - kinks[i] * d_[j]);
    norms[i] = s;
  }
  const std::size_t rows = std::size_t{1} << n;
  bounds_.resize(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    double eps_d = 0.0;
    for (std::size_t j = 0; j < n; ++j) eps_d += ((k >> j) & 1U ? -1.0 : 1.0) * d_[j];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, norms[i] + kinks[i] * eps_d);
    bounds_[k] = best;
  }
  tol_ = 1e-10 * (1.0 + l1(y_) + max_kink * d_.sum());
}

std::vector<int> MajorizationPolytope::sign_row(std::size_t k) const {
  std::vector<int> row(dim());
  for (std::size_t j = 0; j < dim(); ++j) row[j] = (k >> j) & 1U ? -1 : 1;
  return row;
}

double MajorizationPolytope::row_dot(std::size_t k, std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < dim(); ++j) s += ((k >> j) & 1U ? -x[j] : x[j]);
  return s;
}

double MajorizationPolytope::max_violation(std::span<const double> x) const {
  require_same_length(x.size(), dim(), "polytope membership");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < row_count(); ++k) worst = std::max(worst, row_dot(k, x) - bounds_[k]);
  return worst;
}

bool MajorizationPolytope::contains(std::span<const double> x) const { return max_violation(x) <= tol_; }

MajorizationPolytope polytope_inequalities(std::vector<double> y, const WeightVector& d) {
  return MajorizationPolytope(std::move(y), d);
}

std::vector<std::vector<double>> polytope_vertices(const MajorizationPolytope& p) {
  const std::size_t n = p.dim();
  if (n > 5) {
    throw PolytopeTooLarge("polytope_vertices: dimension " + std::to_string(n) + " exceeds 5");
  }
  const std::size_t rows = p.row_count();
  const double feas_tol = 1e-9 * (1.0 + l1(p.reference()));

  // Row 0 (e^T) is active at every member, so each vertex is cut out by it
  // together with n - 1 further rows. The last row (-e^T) is parallel to it.
  std::vector<std::size_t> candidates;
  for (std::size_t k = 1; k + 1 < rows; ++k) candidates.push_back(k);

  std::vector<std::vector<double>> vertices;
  auto record = [&](const std::vector<double>& v) {
    for (const auto& w : vertices) {
      double diff = 0.0;
      for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(v[j] - w[j]));
      if (diff <= 1e-8) return;
    }
    vertices.push_back(v);
  };

  std::vector<std::size_t> chosen(n - 1);
  std::vector<double> z;
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t depth, std::size_t start) {
    if (depth == n - 1) {
      std::vector<double> m(n * n), rhs(n);
      for (std::size_t j = 0; j < n; ++j) m[j] = 1.0;
      rhs[0] = p.bounds()[0];
      for (std::size_t r = 0; r + 1 < n; ++r) {
        const auto row = p.sign_row(chosen[r]);
        for (std::size_t j = 0; j < n; ++j) m[(r + 1) * n + j] = row[j];
        rhs[r + 1] = p.bounds()[chosen[r]];
      }
      if (!solve_square(std::move(m), std::move(rhs), n, z)) return;
      if (p.max_violation(z) <= feas_tol) record(z);
      return;
    }
    for (std::size_t c = start; c < candidates.size(); ++c) {
      chosen[depth] = candidates[c];
      recurse(depth + 1, c + 1);
    }
  };
  recurse(0, 0);
  return vertices;
}

std::vector<double> classical_maximizer(std::span<const double> y, const WeightVector& d) {
  const auto polytope = polytope_inequalities(std::vector<double>(y.begin(), y.end()), d);
  const auto vertices = polytope_vertices(polytope);

  const std::vector<double>* best = nullptr;
  const std::vector<double>* last_violation = nullptr;
  const std::vector<double>* last_candidate = nullptr;
  for (const auto& z : vertices) {
    const std::vector<double>* violating = nullptr;
    for (const auto& v : vertices) {
      if (!classical_majorizes(v, z)) {
        violating = &v;
        break;
      }
    }
    if (violating != nullptr) {
      last_candidate = &z;
      last_violation = violating;
      continue;
    }
    if (best == nullptr) {
      best = &z;
      continue;
    }
    const auto zs = sorted_decreasing(z);
    const auto bs = sorted_decreasing(*best);
    if (zs > bs || (zs == bs && z > *best)) best = &z;
  }
  if (best == nullptr) {
    std::ostringstream msg;
    msg << "classical_maximizer: no vertex majorizes all others; candidate (";
    for (double c : *last_candidate) msg << ' ' << c;
    msg << " ) fails against (";
    for (double c : *last_violation) msg << ' ' << c;
    msg << " )";
    throw NoMaximizerFound(msg.str(), *last_candidate, *last_violation);
  }
  return *best;
}

}  // namespace gibbsmaj
