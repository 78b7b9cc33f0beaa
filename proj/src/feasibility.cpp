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

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "gibbsmaj/matrix_majorization.hpp"

namespace gibbsmaj {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Orthonormal real coordinates of an N x N hermitian matrix under
// <X, Y> = Re tr(X^* Y): diagonal entries, then sqrt(2) Re and sqrt(2) Im of
// each strictly upper entry.
class HermitianCoords {
 public:
  explicit HermitianCoords(std::size_t n) : n_(n) {}
  std::size_t size() const { return n_ * n_; }

  void to_coords(const ComplexMatrix& m, double* out) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) out[k++] = m(i, i).real();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        out[k++] = kSqrt2 * m(i, j).real();
        out[k++] = kSqrt2 * m(i, j).imag();
      }
  }

  std::vector<double> to_coords(const ComplexMatrix& m) const {
    std::vector<double> v(size());
    to_coords(m, v.data());
    return v;
  }

  HermitianMatrix from_coords(std::span<const double> v) const {
    ComplexMatrix m(n_, n_);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i) m(i, i) = v[k++];
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const Complex z(v[k] / kSqrt2, v[k + 1] / kSqrt2);
        k += 2;
        m(i, j) = z;
        m(j, i) = std::conj(z);
      }
    return HermitianMatrix::symmetrized(m);
  }

 private:
  std::size_t n_;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// The linear constraints C x = c on Choi coordinates, with the orthogonal
// projector onto the solution set and an orthonormal basis of ker C.
class ConstraintSystem {
 public:
  ConstraintSystem(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d)
      : n_(d.dim()), choi_(n_ * n_), out_(n_) {
    p_ = choi_.size();
    const std::size_t block = out_.size();
    m_ = 3 * block;

    // Column l of C is the constraint map applied to the l-th basis matrix.
    c_.assign(m_ * p_, 0.0);
    std::vector<double> basis(p_, 0.0), column(m_);
    for (std::size_t l = 0; l < p_; ++l) {
      basis[l] = 1.0;
      const ChoiMatrix e(choi_.from_coords(basis), n_);
      basis[l] = 0.0;
      out_.to_coords(partial_trace(e.matrix(), n_, n_, Subsystem::kSecond), column.data());
      out_.to_coords(apply_choi(e, b.matrix()), column.data() + block);
      out_.to_coords(apply_choi(e, d.matrix().matrix()), column.data() + 2 * block);
      for (std::size_t i = 0; i < m_; ++i) c_[i * p_ + l] = column[i];
    }
    target_.assign(m_, 0.0);
    out_.to_coords(ComplexMatrix::identity(n_), target_.data());
    out_.to_coords(a.matrix(), target_.data() + block);
    out_.to_coords(d.matrix().matrix(), target_.data() + 2 * block);

    // Orthonormal basis of the row space from the eigenvectors of C C^T.
    ComplexMatrix gram(m_, m_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i; j < m_; ++j) {
        const double s = dot({&c_[i * p_], p_}, {&c_[j * p_], p_});
        gram(i, j) = s;
        gram(j, i) = s;
      }
    const auto e = eig_hermitian(HermitianMatrix::symmetrized(gram));
    const double cutoff = 1e-11 * std::max(e.eigenvalues.back(), 1e-300);
    for (std::size_t k = 0; k < m_; ++k) {
      if (e.eigenvalues[k] <= cutoff) continue;
      std::vector<double> u(p_, 0.0);
      for (std::size_t i = 0; i < m_; ++i) {
        const double vik = e.eigenvectors(i, k).real();
        for (std::size_t l = 0; l < p_; ++l) u[l] += c_[i * p_ + l] * vik;
      }
      const double scale = 1.0 / std::sqrt(e.eigenvalues[k]);
      for (double& x : u) x *= scale;
      row_basis_.push_back(std::move(u));
    }
    // Re-orthogonalize once; the eigenvectors are accurate but not exact.
    orthonormalize(row_basis_, {});
  }

  std::size_t choi_dim() const { return n_ * n_; }
  std::size_t coords() const { return p_; }
  const HermitianCoords& choi_coords() const { return choi_; }

  double residual_norm(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double r = dot({&c_[i * p_], p_}, x) - target_[i];
      s += r * r;
    }
    return std::sqrt(s);
  }

  // Nearest point of the least-squares solution set {x : C^T C x = C^T c}.
  void project(std::vector<double>& x) const {
    // x <- x - U U^T x + x_min_norm, with U the row-space basis.
    if (!particular_) particular_ = min_norm_solution();
    for (const auto& u : row_basis_) {
      const double c = dot(u, x);
      for (std::size_t l = 0; l < p_; ++l) x[l] -= c * u[l];
    }
    for (std::size_t l = 0; l < p_; ++l) x[l] += (*particular_)[l];
  }

  std::vector<std::vector<double>> null_basis() const {
    std::vector<std::vector<double>> basis;
    const std::size_t wanted = p_ - row_basis_.size();
    for (std::size_t l = 0; l < p_ && basis.size() < wanted; ++l) {
      std::vector<double> v(p_, 0.0);
      v[l] = 1.0;
      if (reduce(v, row_basis_) && reduce(v, basis)) basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::vector<double> min_norm_solution() const {
    // x = sum_k u_k (u_k^T x) where C x = c; solve in the row-space basis:
    // (C U) alpha = c in least squares, x = U alpha.
    const std::size_t r = row_basis_.size();
    std::vector<double> cu(m_ * r);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < r; ++k) cu[i * r + k] = dot({&c_[i * p_], p_}, row_basis_[k]);
    // Normal equations (CU)^T (CU) alpha = (CU)^T c; CU has full column rank.
    ComplexMatrix normal(r, r);
    std::vector<double> rhs(r, 0.0);
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t j = k; j < r; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) s += cu[i * r + k] * cu[i * r + j];
        normal(k, j) = s;
        normal(j, k) = s;
      }
      for (std::size_t i = 0; i < m_; ++i) rhs[k] += cu[i * r + k] * target_[i];
    }
    const auto e = eig_hermitian(HermitianMatrix::symmetrized(normal));
    std::vector<double> alpha(r, 0.0);
    for (std::size_t q = 0; q < r; ++q) {
      if (e.eigenvalues[q] <= 1e-14 * e.eigenvalues.back()) continue;
      double proj = 0.0;
      for (std::size_t k = 0; k < r; ++k) proj += e.eigenvectors(k, q).real() * rhs[k];
      proj /= e.eigenvalues[q];
      for (std::size_t k = 0; k < r; ++k) alpha[k] += e.eigenvectors(k, q).real() * proj;
    }
    std::vector<double> x(p_, 0.0);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < p_; ++l) x[l] += alpha[k] * row_basis_[k][l];
    return x;
  }

  // Removes the span of `against` from v and normalizes; false if v collapses.
  static bool reduce(std::vector<double>& v, const std::vector<std::vector<double>>& against) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : against) {
        const double c = dot(u, v);
        for (std::size_t l = 0; l < v.size(); ++l) v[l] -= c * u[l];
      }
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm < 0.25) return false;
    for (double& x : v) x /= norm;
    return true;
  }

  static void orthonormalize(std::vector<std::vector<double>>& vs, const std::vector<std::vector<double>>& fixed) {
    std::vector<std::vector<double>> done;
    for (auto& v : vs) {
      reduce(v, fixed);
      for (const auto& u : done) {
        const double c = dot(u, v);
        for (std::size_t l = 0; l < v.size(); ++l) v[l] -= c * u[l];
      }
      const double norm = std::sqrt(dot(v, v));
      for (double& x : v) x /= norm;
      done.push_back(v);
    }
    vs = std::move(done);
  }

  std::size_t n_;
  HermitianCoords choi_;
  HermitianCoords out_;
  std::size_t p_ = 0;
  std::size_t m_ = 0;
  std::vector<double> c_;
  std::vector<double> target_;
  std::vector<std::vector<double>> row_basis_;
  mutable std::optional<std::vector<double>> particular_;
};

HermitianMatrix clip_psd(const Eigendecomposition& e) {
  return spectral_apply(e, [](double l) { return l > 0.0 ? l : 0.0; });
}

// Solves H x = rhs for symmetric positive definite H (row-major, size k).
// Adds a tiny diagonal shift if the factorization breaks down.
std::vector<double> solve_spd(std::vector<double> h, std::vector<double> rhs, std::size_t k) {
  double diag_max = 0.0;
  for (std::size_t i = 0; i < k; ++i) diag_max = std::max(diag_max, h[i * k + i]);
  for (double shift = 0.0;; shift = shift == 0.0 ? 1e-14 * diag_max : shift * 100.0) {
    std::vector<double> l = h;
    for (std::size_t i = 0; i < k; ++i) l[i * k + i] += shift;
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      double s = l[j * k + j];
      for (std::size_t q = 0; q < j; ++q) s -= l[j * k + q] * l[j * k + q];
      if (!(s > 0.0)) {
        ok = false;
        break;
      }
      const double ljj = std::sqrt(s);
      l[j * k + j] = ljj;
      for (std::size_t i = j + 1; i < k; ++i) {
        double t = l[i * k + j];
        for (std::size_t q = 0; q < j; ++q) t -= l[i * k + q] * l[j * k + q];
        l[i * k + j] = t / ljj;
      }
    }
    if (!ok) {
      if (shift > diag_max) throw std::runtime_error("solve_spd: matrix is not positive definite");
      continue;
    }
    std::vector<double> y(k);
    for (std::size_t i = 0; i < k; ++i) {
      double s = rhs[i];
      for (std::size_t q = 0; q < i; ++q) s -= l[i * k + q] * y[q];
      y[i] = s / l[i * k + i];
    }
    for (std::size_t i = k; i-- > 0;) {
      double s = y[i];
      for (std::size_t q = i + 1; q < k; ++q) s -= l[q * k + i] * rhs[q];
      rhs[i] = s / l[i * k + i];
    }
    return rhs;
  }
}

FeasibilityVerdict dykstra_feasibility(const ConstraintSystem& sys, const SolverSettings& settings) {
  const std::size_t n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(sys.choi_dim()))));
  const auto& coords = sys.choi_coords();
  const std::size_t p = sys.coords();

  FeasibilityVerdict verdict;
  std::vector<double> x = coords.to_coords((1.0 / n) * ComplexMatrix::identity(sys.choi_dim()));
  sys.project(x);
  std::vector<double> correction(p, 0.0), shifted(p), z(p);

  double best = std::numeric_limits<double>::infinity();
  double best_at_window_start = best;
  for (int it = 1; it <= settings.max_iterations; ++it) {
    for (std::size_t l = 0; l < p; ++l) shifted[l] = x[l] + correction[l];
    const HermitianMatrix psd = clip_psd(eig_hermitian(coords.from_coords(shifted)));
    coords.to_coords(psd.matrix(), z.data());
    for (std::size_t l = 0; l < p; ++l) correction[l] = shifted[l] - z[l];

    const double residual = sys.residual_norm(z);
    verdict.iterations = it;
    best = std::min(best, residual);
    if (residual <= settings.feas_tol) {
      verdict.status = FeasibilityStatus::kFeasible;
      verdict.residual = residual;
      verdict.certificate.emplace(psd, n);
      return verdict;
    }
    if (it % settings.plateau_window == 0) {
      if (best_at_window_start - best < settings.plateau_improvement && best > 10.0 * settings.feas_tol) {
        verdict.status = FeasibilityStatus::kInfeasible;
        verdict.residual = best;
        return verdict;
      }
      best_at_window_start = best;
    }
    x = z;
    sys.project(x);
  }
  verdict.status = FeasibilityStatus::kUndecided;
  verdict.residual = best;
  return verdict;
}

FeasibilityVerdict interior_point_feasibility(const ConstraintSystem& sys, const SolverSettings& settings) {
  const std::size_t big = sys.choi_dim();
  const std::size_t n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(big))));
  const auto& coords = sys.choi_coords();
  const std::size_t p = sys.coords();

  FeasibilityVerdict verdict;
  std::vector<double> base = coords.to_coords((1.0 / n) * ComplexMatrix::identity(big));
  sys.project(base);
  const double consistency = sys.residual_norm(base);
  if (consistency > settings.feas_tol) {
    // No hermitian J satisfies the linear constraints at all.
    verdict.status = FeasibilityStatus::kInfeasible;
    verdict.residual = consistency;
    verdict.margin = -std::numeric_limits<double>::infinity();
    return verdict;
  }

  const auto null = sys.null_basis();
  const std::size_t k = null.size();
  std::vector<ComplexMatrix> directions;
  directions.reserve(k);
  for (const auto& v : null) directions.push_back(coords.from_coords(v).matrix());
  const ComplexMatrix j0 = coords.from_coords(base).matrix();

  auto choi_at = [&](std::span<const double> w) {
    ComplexMatrix j = j0;
    for (std::size_t i = 0; i < k; ++i) {
      if (w[i] == 0.0) continue;
      j += w[i] * directions[i];
    }
    return HermitianMatrix::symmetrized(j);
  };

  // Returns true when the clipped iterate certifies feasibility.
  double best_residual = std::numeric_limits<double>::infinity();
  auto try_certificate = [&](const HermitianMatrix& j) {
    const auto e = eig_hermitian(j);
    const HermitianMatrix clipped = clip_psd(e);
    const double residual = sys.residual_norm(coords.to_coords(clipped.matrix()));
    best_residual = std::min(best_residual, residual);
    if (residual <= settings.feas_tol) {
      verdict.status = FeasibilityStatus::kFeasible;
      verdict.residual = residual;
      verdict.margin = e.eigenvalues.front();
      verdict.certificate.emplace(clipped, n);
      return true;
    }
    return false;
  };

  // Variables (w, t); S = J(w) - t I must stay positive definite.
  std::vector<double> w(k, 0.0);
  const HermitianMatrix j_start = choi_at(w);
  if (try_certificate(j_start) && verdict.margin >= 0.0) return verdict;
  verdict.status = FeasibilityStatus::kUndecided;
  verdict.certificate.reset();
  double t = min_eigenvalue(j_start) - 1.0;
  double tau = 1.0;

  auto barrier = [&](std::span<const double> wv, double tv, double tauv, bool& inside) {
    HermitianMatrix s = choi_at(wv);
    s -= tv * HermitianMatrix::identity(big);
    const auto e = eig_hermitian(s);
    inside = e.eigenvalues.front() > 0.0;
    if (!inside) return std::numeric_limits<double>::infinity();
    double f = -tauv * tv;
    for (double l : e.eigenvalues) f -= std::log(l);
    return f;
  };

  const std::size_t dim = k + 1;
  for (int step = 1; step <= settings.max_newton_steps; ++step) {
    verdict.iterations = step;
    HermitianMatrix s = choi_at(w);
    s -= t * HermitianMatrix::identity(big);
    const auto e = eig_hermitian(s);
    const ComplexMatrix& v = e.eigenvectors;
    const ComplexMatrix v_adj = v.adjoint();
    std::vector<double> inv_sqrt(big);
    for (std::size_t i = 0; i < big; ++i) inv_sqrt[i] = 1.0 / std::sqrt(e.eigenvalues[i]);

    // Scaled directions S^{-1/2} A S^{-1/2} in the eigenbasis of S; the last
    // one belongs to t (A = -I).
    std::vector<ComplexMatrix> scaled(dim);
    for (std::size_t a = 0; a < k; ++a) {
      ComplexMatrix m = v_adj * directions[a] * v;
      for (std::size_t i = 0; i < big; ++i)
        for (std::size_t j = 0; j < big; ++j) m(i, j) *= inv_sqrt[i] * inv_sqrt[j];
      scaled[a] = std::move(m);
    }
    {
      ComplexMatrix m(big, big);
      for (std::size_t i = 0; i < big; ++i) m(i, i) = -inv_sqrt[i] * inv_sqrt[i];
      scaled[k] = std::move(m);
    }
    std::vector<double> hess(dim * dim), grad(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      grad[a] = -scaled[a].trace().real() - (a == k ? tau : 0.0);
      for (std::size_t b = a; b < dim; ++b) {
        double h = 0.0;
        const auto ea = scaled[a].entries();
        const auto eb = scaled[b].entries();
        for (std::size_t q = 0; q < ea.size(); ++q) h += ea[q].real() * eb[q].real() + ea[q].imag() * eb[q].imag();
        hess[a * dim + b] = h;
        hess[b * dim + a] = h;
      }
    }
    std::vector<double> neg_grad(dim);
    for (std::size_t a = 0; a < dim; ++a) neg_grad[a] = -grad[a];
    const std::vector<double> delta = solve_spd(hess, neg_grad, dim);
    const double decrement = -dot(grad, delta);

    // Backtracking line search on the barrier objective.
    bool inside = true;
    const double f0 = barrier(w, t, tau, inside);
    double alpha = 1.0;
    std::vector<double> w_try(k);
    double t_try = t;
    while (alpha > 1e-14) {
      for (std::size_t i = 0; i < k; ++i) w_try[i] = w[i] + alpha * delta[i];
      t_try = t + alpha * delta[k];
      const double f1 = barrier(w_try, t_try, tau, inside);
      if (inside && f1 <= f0 - 0.25 * alpha * decrement) break;
      alpha *= 0.5;
    }
    if (alpha > 1e-14) {
      w = w_try;
      t = t_try;
    }

    const HermitianMatrix j = choi_at(w);
    if (try_certificate(j)) return verdict;

    if (decrement < 1e-8 || alpha <= 1e-14) {
      // Near the central path S^{-1} / tr S^{-1} is almost dual feasible;
      // make it exactly orthogonal to the affine directions and PSD.
      HermitianMatrix sc = j;
      sc -= t * HermitianMatrix::identity(big);
      const auto es = eig_hermitian(sc);
      const HermitianMatrix s_inv = spectral_apply(es, [](double l) { return 1.0 / l; });
      std::vector<double> z = coords.to_coords((1.0 / s_inv.trace()) * s_inv.matrix());
      for (const auto& nv : null) {
        const double c = dot(nv, z);
        for (std::size_t l = 0; l < p; ++l) z[l] -= c * nv[l];
      }
      const double lowest = eig_hermitian(coords.from_coords(z)).eigenvalues.front();
      const double shift = std::max(0.0, -lowest);
      const auto identity_coords = coords.to_coords(ComplexMatrix::identity(big));
      for (std::size_t l = 0; l < p; ++l) z[l] = (z[l] + shift * identity_coords[l]) / (1.0 + big * shift);
      const double upper = dot(z, base);
      verdict.margin = upper;
      if (upper < -settings.feas_tol) {
        verdict.status = FeasibilityStatus::kInfeasible;
        verdict.residual = best_residual;
        return verdict;
      }
      tau *= 10.0;
      if (tau > settings.max_barrier) break;
    }
  }
  verdict.status = FeasibilityStatus::kUndecided;
  verdict.residual = best_residual;
  return verdict;
}

}  // namespace

FeasibilityVerdict cptp_feasibility(const HermitianMatrix& a, const HermitianMatrix& b, const GibbsReference& d,
                                    const SolverSettings& settings) {
  const std::size_t n = d.dim();
  if (a.dim() != n || b.dim() != n) throw DimensionError("cptp_feasibility: dimension mismatch");
  if (n > 4) throw DimensionError("cptp_feasibility: dimensions above 4 are not supported");

  const double trace_gap = std::abs(a.trace() - b.trace());
  if (trace_gap > settings.trace_tol * (1.0 + std::abs(b.trace()))) {
    FeasibilityVerdict verdict;
    verdict.status = FeasibilityStatus::kInfeasible;
    verdict.residual = trace_gap;
    return verdict;
  }
  const ConstraintSystem sys(a, b, d);
  return settings.method == FeasibilityMethod::kDykstra ? dykstra_feasibility(sys, settings)
                                                        : interior_point_feasibility(sys, settings);
}

}  // namespace gibbsmaj
