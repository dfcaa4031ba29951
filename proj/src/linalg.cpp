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

#include "entest/linalg.hpp"

#include <sstream>

#include "entest/kernels.hpp"

namespace entest {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw LinalgError("matmul: inner dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  kernels::active().zgemm(a.rows(), b.cols(), a.cols(), a.data(), b.data(),
                          c.data());
  return c;
}

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw LinalgError("matmul: inner dimension mismatch");
  RealMatrix c(a.rows(), b.cols());
  kernels::active().dgemm(a.rows(), b.cols(), a.cols(), a.data(), b.data(),
                          c.data());
  return c;
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.flat()[i] = a.flat()[i];
  return out;
}

RealMatrix real_part(const ComplexMatrix& a) {
  RealMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.flat()[i] = a.flat()[i].real();
  return out;
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw LinalgError("trace_of_product: shape mismatch");
  }
  cplx acc{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, i);
  return acc;
}

ComplexMatrix sandwich(const ComplexMatrix& u, const ComplexMatrix& m) {
  return matmul(matmul(u, m), adjoint(u));
}

ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> w) {
  ComplexMatrix out(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) out(i, j) = v[i] * std::conj(w[j]);
  return out;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() {
  return ComplexMatrix(2, 2, {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0});
}
ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return out;
}

namespace {

void check_bipartite(const ComplexMatrix& rho, BipartiteDims dims,
                     const char* who) {
  if (!rho.square() || rho.rows() != dims.total() || dims.total() == 0) {
    std::ostringstream msg;
    msg << who << ": matrix is " << rho.rows() << "x" << rho.cols()
        << " but subsystem dimensions are " << dims.dim_a << "x" << dims.dim_b;
    throw LinalgError(msg.str());
  }
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims,
                                Subsystem subsystem) {
  check_bipartite(rho, dims, "partial_transpose");
  const std::size_t da = dims.dim_a;
  const std::size_t db = dims.dim_b;
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t ia = 0; ia < da; ++ia)
    for (std::size_t ib = 0; ib < db; ++ib)
      for (std::size_t ja = 0; ja < da; ++ja)
        for (std::size_t jb = 0; jb < db; ++jb) {
          const std::size_t row = ia * db + ib;
          const std::size_t col = ja * db + jb;
          if (subsystem == Subsystem::A) {
            out(row, col) = rho(ja * db + ib, ia * db + jb);
          } else {
            out(row, col) = rho(ia * db + jb, ja * db + ib);
          }
        }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims,
                            Subsystem keep) {
  check_bipartite(rho, dims, "partial_trace");
  const std::size_t da = dims.dim_a;
  const std::size_t db = dims.dim_b;
  if (keep == Subsystem::A) {
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j)
        for (std::size_t b = 0; b < db; ++b) out(i, j) += rho(i * db + b, j * db + b);
    return out;
  }
  ComplexMatrix out(db, db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t a = 0; a < da; ++a) out(i, j) += rho(a * db + i, a * db + j);
  return out;
}

void validate_density(const ComplexMatrix& rho, double tol) {
  if (!rho.square() || rho.rows() == 0) {
    throw LinalgError("density matrix must be square and non-empty");
  }
  const double asym = hermitian_asymmetry(rho);
  if (asym > tol) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max asymmetry " << asym << ")";
    throw LinalgError(msg.str());
  }
  const cplx tr = trace(rho);
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr.real() << " (expected 1)";
    throw LinalgError(msg.str());
  }
  const auto spec = hermitian_eig(rho, tol);
  if (spec.values.front() < -tol) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << spec.values.front();
    throw LinalgError(msg.str());
  }
}

double negativity(const ComplexMatrix& rho, BipartiteDims dims) {
  check_bipartite(rho, dims, "negativity");
  validate_density(rho);
  const auto spec = hermitian_eig(partial_transpose(rho, dims, Subsystem::A));
  double trace_norm = 0.0;
  for (double v : spec.values) trace_norm += std::abs(v);
  return std::max(0.0, trace_norm - 1.0);
}

ComplexMatrix matrix_exp_involution(const ComplexMatrix& g, double theta) {
  if (!g.square()) throw LinalgError("matrix_exp_involution: matrix not square");
  const auto id = ComplexMatrix::identity(g.rows());
  const double defect = max_abs_diff(matmul(g, g), id);
  if (defect > 1e-12) {
    std::ostringstream msg;
    msg << "matrix_exp_involution: generator is not an involution (|G^2 - I| = "
        << defect << ")";
    throw LinalgError(msg.str());
  }
  return id * cplx{std::cos(theta), 0.0} + g * cplx{0.0, std::sin(theta)};
}

template <typename T>
T determinant(const Matrix<T>& input) {
  if (!input.square()) throw LinalgError("determinant: matrix not square");
  Matrix<T> a = input;
  const std::size_t n = a.rows();
  T det{1};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == T{}) return T{};
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& input) {
  if (!input.square()) throw LinalgError("inverse: matrix not square");
  const std::size_t n = input.rows();
  Matrix<T> a = input;
  Matrix<T> inv = Matrix<T>::identity(n);
  const double scale = max_abs(input);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) <= 1e-15 * scale) {
      throw LinalgError("inverse: matrix is singular");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const T d = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      if (f == T{}) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

template double determinant(const RealMatrix&);
template cplx determinant(const ComplexMatrix&);
template RealMatrix inverse(const RealMatrix&);
template ComplexMatrix inverse(const ComplexMatrix&);

RealMatrix symmetric_pinv(const RealMatrix& a, double rel_threshold,
                          std::size_t* dropped) {
  const auto spec = symmetric_eig(a, 1e-9 * std::max(1.0, max_abs(a)));
  double largest = 0.0;
  for (double v : spec.values) largest = std::max(largest, std::abs(v));
  const double cut = rel_threshold * largest;
  const std::size_t n = a.rows();
  RealMatrix out(n, n);
  std::size_t zeroed = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = spec.values[k];
    if (std::abs(v) <= cut || largest == 0.0) {
      ++zeroed;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += spec.vectors(i, k) * spec.vectors(j, k) / v;
  }
  if (dropped) *dropped = zeroed;
  return out;
}

}  // namespace entest
