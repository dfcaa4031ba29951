// Copyright 2026 The entest Authors
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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <vector>

#include "entest/errors.hpp"

namespace entest {

using cplx = std::complex<double>;

/// Tolerance used when validating analytically built Hermitian input.
inline constexpr double kHermitianTol = 1e-12;

template <typename T>
inline constexpr bool is_complex_v = false;
template <typename T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

template <typename T>
inline T conj_of(const T& x) {
  if constexpr (is_complex_v<T>) {
    return std::conj(x);
  } else {
    return x;
  }
}

/// Dense row-major matrix. Dimensions here are small (density matrices up to
/// 9x9, covariance blocks up to 8x8, Fock blocks of a few hundred), so the
/// storage is a flat vector and every operation allocates its result.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> values)
      : rows_(rows), cols_(cols), data_(values) {
    if (data_.size() != rows * cols) {
      throw LinalgError("Matrix: initializer size does not match shape");
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const noexcept {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> flat() noexcept { return data_; }
  std::span<const T> flat() const noexcept { return data_; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  Matrix& operator+=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

 private:
  void check_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw LinalgError("Matrix: shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;

/// Eigenvalues ascending; eigenvectors are the columns of `vectors`, each with
/// its largest-magnitude component made real and positive.
template <typename T>
struct SpectralDecomposition {
  std::vector<double> values;
  Matrix<T> vectors;
};

struct BipartiteDims {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;

  std::size_t total() const noexcept { return dim_a * dim_b; }
};

enum class Subsystem { A, B };

// --- elementary operations ---------------------------------------------

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);

template <typename T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = conj_of(a(i, j));
  return out;
}

template <typename T>
T trace(const Matrix<T>& a) {
  T acc{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) acc += a(i, i);
  return acc;
}

template <typename T>
double max_abs(const Matrix<T>& a) {
  double m = 0.0;
  for (const auto& x : a.flat()) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

template <typename T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw LinalgError("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, static_cast<double>(std::abs(a.flat()[i] - b.flat()[i])));
  }
  return m;
}

/// max_ij |M_ij - conj(M_ji)|
template <typename T>
double hermitian_asymmetry(const Matrix<T>& a) {
  if (!a.square()) throw LinalgError("hermitian_asymmetry: matrix not square");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      m = std::max(m, static_cast<double>(std::abs(a(i, j) - conj_of(a(j, i)))));
  return m;
}

ComplexMatrix to_complex(const RealMatrix& a);
RealMatrix real_part(const ComplexMatrix& a);

/// Tr[A B] without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// U M U^dagger
ComplexMatrix sandwich(const ComplexMatrix& u, const ComplexMatrix& m);

/// |v><w| for column vectors given as spans.
ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> w);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// --- quantum kernels -----------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims,
                                Subsystem subsystem);

/// Reduced state on `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims,
                            Subsystem keep);

/// ||rho^{T_A}||_1 - 1
double negativity(const ComplexMatrix& rho, BipartiteDims dims);

/// cos(theta) I + i sin(theta) G for an involution G (G^2 = I).
ComplexMatrix matrix_exp_involution(const ComplexMatrix& g, double theta);

/// Throws LinalgError unless rho is Hermitian, unit trace and PSD within tol.
void validate_density(const ComplexMatrix& rho, double tol = 1e-10);

// --- decompositions ------------------------------------------------------

/// Householder tridiagonalization + implicit QL. Rejects input whose
/// Hermitian asymmetry exceeds `tol`; output is deterministic.
SpectralDecomposition<cplx> hermitian_eig(const ComplexMatrix& m,
                                          double tol = kHermitianTol);
SpectralDecomposition<double> symmetric_eig(const RealMatrix& m,
                                            double tol = kHermitianTol);

/// Real symmetric tridiagonal input (diagonal, off-diagonal of size n-1).
SpectralDecomposition<double> tridiagonal_eig(std::vector<double> diagonal,
                                              std::vector<double> offdiagonal);

/// LU with partial pivoting.
template <typename T>
T determinant(const Matrix<T>& a);
template <typename T>
Matrix<T> inverse(const Matrix<T>& a);

/// Pseudo-inverse of a real symmetric matrix; eigenvalues below
/// rel_threshold * max|eigenvalue| are treated as zero. Returns the rank
/// deficiency through `dropped`.
RealMatrix symmetric_pinv(const RealMatrix& a, double rel_threshold,
                          std::size_t* dropped = nullptr);

}  // namespace entest
