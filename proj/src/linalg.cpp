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

#include "gibbsmaj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gibbsmaj {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("ComplexMatrix: entry count does not match dimensions");
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (Complex& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (Complex& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw DimensionError("matrix product: inner dimension mismatch");
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex(0.0)) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, std::size_t first_dim,
                            std::size_t second_dim, Subsystem traced) {
  const std::size_t total = first_dim * second_dim;
  if (!x.is_square() || x.rows() != total) {
    throw DimensionError("partial_trace: matrix is not " + std::to_string(total) + "x" +
                         std::to_string(total));
  }
  if (traced == Subsystem::kSecond) {
    ComplexMatrix out(first_dim, first_dim);
    for (std::size_t i = 0; i < first_dim; ++i)
      for (std::size_t j = 0; j < first_dim; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < second_dim; ++k) s += x(i * second_dim + k, j * second_dim + k);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(second_dim, second_dim);
  for (std::size_t i = 0; i < second_dim; ++i)
    for (std::size_t j = 0; j < second_dim; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < first_dim; ++k) s += x(k * second_dim + i, k * second_dim + j);
      out(i, j) = s;
    }
  return out;
}

namespace {

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("matrix_exp: non-square input");
  const std::size_t n = a.rows();
  const double norm = one_norm(a);
  if (!std::isfinite(norm)) throw std::overflow_error("matrix_exp: non-finite input");
  if (norm == 0.0) return ComplexMatrix::identity(n);

  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  if (squarings > 1000) throw std::overflow_error("matrix_exp: input norm out of range");
  const ComplexMatrix x = std::ldexp(1.0, -squarings) * a;

  // Horner evaluation of sum_{k<=12} x^k / k!.
  constexpr int kOrder = 12;
  ComplexMatrix result = ComplexMatrix::identity(n);
  for (int k = kOrder; k >= 1; --k) {
    result = ComplexMatrix::identity(n) + (1.0 / k) * (x * result);
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  for (const Complex& z : result.entries()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::overflow_error("matrix_exp: result overflowed");
    }
  }
  return result;
}

double hermiticity_residual(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("hermiticity check on a non-square matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst / std::max(1.0, a.max_abs());
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) {
  const double r = hermiticity_residual(m);
  if (r > kHermitianTol) {
    std::ostringstream msg;
    msg << "matrix is not hermitian (residual " << r << ")";
    throw NotHermitian(msg.str());
  }
  *this = symmetrized(m);
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) { return {ComplexMatrix::identity(n), Unchecked{}}; }
HermitianMatrix HermitianMatrix::zeros(std::size_t n) { return {ComplexMatrix(n, n), Unchecked{}}; }
HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  return {ComplexMatrix::diagonal(values), Unchecked{}};
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian matrix must be square");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return {std::move(out), Unchecked{}};
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  m_ += other.m_;
  return *this;
}
HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
  m_ -= other.m_;
  return *this;
}
HermitianMatrix& HermitianMatrix::operator*=(double scalar) {
  m_ *= scalar;
  return *this;
}

HermitianMatrix operator+(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs += rhs; }
HermitianMatrix operator-(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs -= rhs; }
HermitianMatrix operator*(double scalar, HermitianMatrix m) { return m *= scalar; }

HermitianMatrix conjugate_by(const ComplexMatrix& u, const HermitianMatrix& x) {
  return HermitianMatrix::symmetrized(u * x.matrix() * u.adjoint());
}

Eigendecomposition eig_hermitian(const HermitianMatrix& input) {
  constexpr int kMaxSweeps = 100;
  const std::size_t n = input.dim();
  ComplexMatrix a = input.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = a.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (scale > 0.0 && off_norm() > 1e-14 * scale) {
    if (++sweep > kMaxSweeps) {
      throw EigenNotConverged("eig_hermitian: Jacobi did not converge in 100 sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r <= 1e-300) continue;
        const Complex phase = a(p, q) / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c + akq * gqp;
          a(k, q) = akp * s + akq * gqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * gqp;
          v(k, q) = vkp * s + vkq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = s * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  Eigendecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

double spectral_norm(const HermitianMatrix& a) {
  if (a.dim() == 0) return 0.0;
  const auto e = eig_hermitian(a);
  return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

double min_eigenvalue(const HermitianMatrix& a) { return eig_hermitian(a).eigenvalues.front(); }

double trace_norm(const HermitianMatrix& a) {
  double s = 0.0;
  for (double l : eig_hermitian(a).eigenvalues) s += std::abs(l);
  return s;
}

double trace_norm(const ComplexMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  ComplexMatrix dilation(r + c, r + c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      dilation(i, r + j) = m(i, j);
      dilation(r + j, i) = std::conj(m(i, j));
    }
  // Eigenvalues are +-sigma_i plus |r - c| zeros.
  double s = 0.0;
  for (double l : eig_hermitian(HermitianMatrix::symmetrized(dilation)).eigenvalues) s += std::abs(l);
  return 0.5 * s;
}

HermitianMatrix psd_sqrt(const HermitianMatrix& a) {
  const auto e = eig_hermitian(a);
  if (e.eigenvalues.empty()) return a;
  const double norm = std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
  if (e.eigenvalues.front() < -1e-9 * norm) {
    std::ostringstream msg;
    msg << "psd_sqrt: smallest eigenvalue " << e.eigenvalues.front() << " is below -1e-9 * " << norm;
    throw NotPSD(msg.str());
  }
  return spectral_apply(e, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
}

HermitianMatrix matrix_exp(const HermitianMatrix& a) {
  return spectral_apply(eig_hermitian(a), [](double l) {
    const double v = std::exp(l);
    if (!std::isfinite(v)) throw std::overflow_error("matrix_exp: eigenvalue exponent overflowed");
    return v;
  });
}

std::string to_string(const ComplexMatrix& m) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      os << "(" << m(i, j).real() << "," << m(i, j).imag() << ")" << (j + 1 < m.cols() ? " " : "");
    }
    os << (i + 1 < m.rows() ? "\n" : "]");
  }
  return os.str();
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionError("RealMatrix: entry count does not match dimensions");
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> RealMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw DimensionError("RealMatrix::apply: length mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
  return out;
}

RealMatrix operator*(const RealMatrix& lhs, const RealMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw DimensionError("matrix product: inner dimension mismatch");
  RealMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k)
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += lhs(i, k) * rhs(k, j);
  return out;
}

}  // namespace gibbsmaj
