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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbsmaj {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPSD : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EigenNotConverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

/// [A, B] = AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { kFirst, kSecond };

/// Traces out `traced` from an operator on C^first_dim (x) C^second_dim.
ComplexMatrix partial_trace(const ComplexMatrix& x, std::size_t first_dim,
                            std::size_t second_dim, Subsystem traced);

/// Scaling-and-squaring with an order-12 Taylor polynomial.
ComplexMatrix matrix_exp(const ComplexMatrix& a);

/// max |A - A^*| relative to max(1, max |A|).
double hermiticity_residual(const ComplexMatrix& a);

/// Hermitian matrix. Construction checks A = A^* to 1e-12 (relative to the
/// largest entry) and then symmetrizes exactly.
class HermitianMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;

  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix m);

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zeros(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> values);
  /// Symmetrizes (m + m^*)/2 without checking the residual.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  operator const ComplexMatrix&() const { return m_; }  // NOLINT
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.frobenius_norm(); }

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator-=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double scalar);

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

HermitianMatrix operator+(HermitianMatrix lhs, const HermitianMatrix& rhs);
HermitianMatrix operator-(HermitianMatrix lhs, const HermitianMatrix& rhs);
HermitianMatrix operator*(double scalar, HermitianMatrix m);

/// U X U^* for any square U.
HermitianMatrix conjugate_by(const ComplexMatrix& u, const HermitianMatrix& x);

struct Eigendecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

/// Cyclic complex Jacobi. Throws EigenNotConverged after 100 sweeps.
Eigendecomposition eig_hermitian(const HermitianMatrix& a);

/// Rebuilds V diag(f(lambda)) V^*.
template <typename F>
HermitianMatrix spectral_apply(const Eigendecomposition& e, F&& f) {
  const std::size_t n = e.eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = e.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += vik * std::conj(e.eigenvectors(j, k));
      }
    }
  }
  return HermitianMatrix::symmetrized(out);
}

double spectral_norm(const HermitianMatrix& a);
double min_eigenvalue(const HermitianMatrix& a);

/// Sum of absolute eigenvalues.
double trace_norm(const HermitianMatrix& a);
/// Sum of singular values, via the hermitian dilation [[0, M], [M^*, 0]].
double trace_norm(const ComplexMatrix& m);

/// Square root of a PSD matrix. Eigenvalues in [-1e-9 * |A|, 0) are clipped;
/// anything more negative throws NotPSD.
HermitianMatrix psd_sqrt(const HermitianMatrix& a);

/// exp(A) for hermitian A through its eigendecomposition.
HermitianMatrix matrix_exp(const HermitianMatrix& a);

std::string to_string(const ComplexMatrix& m);

/// Dense real matrix, row-major. Used for stochastic matrices on vectors.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static RealMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> entries() const { return data_; }

  std::vector<double> apply(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

RealMatrix operator*(const RealMatrix& lhs, const RealMatrix& rhs);

}  // namespace gibbsmaj
