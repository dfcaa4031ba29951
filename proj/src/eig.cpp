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

// Dense Hermitian eigensolver: Householder reduction to a real symmetric
// tridiagonal matrix followed by implicit-shift QL. The QL rotations are
// accumulated in a real matrix and only combined with the (possibly complex)
// Householder basis at the end.

#include <limits>
#include <numeric>
#include <sstream>

#include "entest/linalg.hpp"

namespace entest {

namespace {

template <typename T>
double abs2(const T& x) {
  if constexpr (is_complex_v<T>) {
    return std::norm(x);
  } else {
    return x * x;
  }
}

template <typename T>
T unit_phase(const T& x) {
  const double m = std::abs(x);
  if (m == 0.0) return T{1};
  return x / m;
}

/// In-place implicit QL on (d, e). `zt` holds eigenvectors as ROWS, so each
/// Givens rotation touches two contiguous rows.
void tql_implicit(std::vector<double>& d, std::vector<double>& e,
                  RealMatrix& zt) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  constexpr int kMaxIter = 100;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    while (true) {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > kMaxIter) {
        throw LinalgError("tridiagonal QL iteration failed to converge");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        const double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
        double* row_lo = &zt(ii, 0);
        double* row_hi = &zt(ii + 1, 0);
        for (std::size_t k = 0; k < n; ++k) {
          const double zf = row_hi[k];
          row_hi[k] = s * row_lo[k] + c * zf;
          row_lo[k] = c * row_lo[k] - s * zf;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

template <typename T>
SpectralDecomposition<T> sort_and_fix_phase(std::vector<double> values,
                                            const Matrix<T>& vecs) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  SpectralDecomposition<T> out;
  out.values.resize(n);
  out.vectors = Matrix<T>(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = values[src];
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double mag = std::abs(vecs(r, src));
      if (mag > best_mag * (1.0 + 1e-12) + 1e-300) {
        best = r;
        best_mag = mag;
      }
    }
    const T fix = conj_of(unit_phase(vecs(best, src)));
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = vecs(r, src) * fix;
    if constexpr (is_complex_v<T>) {
      out.vectors(best, c) = std::abs(out.vectors(best, c));
    }
  }
  return out;
}

template <typename T>
SpectralDecomposition<T> eigh_impl(const Matrix<T>& input, double tol) {
  if (!input.square()) throw LinalgError("eigendecomposition: matrix not square");
  const double asym = hermitian_asymmetry(input);
  if (asym > tol) {
    std::ostringstream msg;
    msg << "eigendecomposition: input is not Hermitian (max asymmetry " << asym
        << " > " << tol << ")";
    throw LinalgError(msg.str());
  }
  const std::size_t n = input.rows();
  if (n == 0) return {};

  Matrix<T> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = (input(i, j) + conj_of(input(j, i))) * 0.5;

  // Householder reduction: column k below the sub-diagonal is annihilated by
  // H_k = I - 2 v v^dagger acting on indices k+1..n-1.
  std::vector<std::vector<T>> reflectors(n > 2 ? n - 2 : 0);
  std::vector<T> p(n);
  std::vector<T> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t off = k + 1;
    const std::size_t len = n - off;
    double xnorm2 = 0.0;
    for (std::size_t i = 0; i < len; ++i) xnorm2 += abs2(a(off + i, k));
    double tail2 = xnorm2 - abs2(a(off, k));
    if (tail2 <= 0.0) continue;
    const double xnorm = std::sqrt(xnorm2);
    const T alpha = -unit_phase(a(off, k)) * xnorm;

    std::vector<T> v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = a(off + i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (const auto& x : v) vnorm2 += abs2(x);
    if (vnorm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(vnorm2);
    for (auto& x : v) x *= inv;

    // p = A22 v, K = v^dagger p (real), w = p - K v
    for (std::size_t i = 0; i < len; ++i) {
      T acc{};
      for (std::size_t j = 0; j < len; ++j) acc += a(off + i, off + j) * v[j];
      p[i] = acc;
    }
    T kk{};
    for (std::size_t i = 0; i < len; ++i) kk += conj_of(v[i]) * p[i];
    const double kreal = std::real(kk);
    for (std::size_t i = 0; i < len; ++i) w[i] = p[i] - v[i] * kreal;

    // A22 -= 2 (v w^dagger + w v^dagger)
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = 0; j < len; ++j)
        a(off + i, off + j) -=
            (v[i] * conj_of(w[j]) + w[i] * conj_of(v[j])) * 2.0;

    a(off, k) = alpha;
    a(k, off) = conj_of(alpha);
    for (std::size_t i = 1; i < len; ++i) {
      a(off + i, k) = T{};
      a(k, off + i) = T{};
    }
    reflectors[k] = std::move(v);
  }

  // Q = H_0 H_1 ... H_{n-3}, built by applying reflectors from the left in
  // reverse order.
  Matrix<T> q = Matrix<T>::identity(n);
  for (std::size_t kk = reflectors.size(); kk-- > 0;) {
    const auto& v = reflectors[kk];
    if (v.empty()) continue;
    const std::size_t off = kk + 1;
    const std::size_t len = n - off;
    std::vector<T> row(n);
    for (std::size_t c = 0; c < n; ++c) {
      T acc{};
      for (std::size_t i = 0; i < len; ++i) acc += conj_of(v[i]) * q(off + i, c);
      row[c] = acc;
    }
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t c = 0; c < n; ++c) q(off + i, c) -= v[i] * row[c] * 2.0;
  }

  // Make the sub-diagonal real: T = D T_real D^dagger.
  std::vector<double> diag(n);
  std::vector<double> offd(n, 0.0);
  std::vector<T> phase(n, T{1});
  for (std::size_t i = 0; i < n; ++i) diag[i] = std::real(a(i, i));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const T sub = a(k + 1, k);
    offd[k] = std::abs(sub);
    phase[k + 1] = phase[k] * unit_phase(sub);
  }

  RealMatrix zt = RealMatrix::identity(n);
  tql_implicit(diag, offd, zt);

  // V = Q D Z, with Z = zt^T.
  Matrix<T> qd = q;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) qd(r, c) *= phase[c];
  Matrix<T> z(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) z(r, c) = zt(c, r);
  return sort_and_fix_phase<T>(std::move(diag), matmul(qd, z));
}

}  // namespace

SpectralDecomposition<cplx> hermitian_eig(const ComplexMatrix& m, double tol) {
  return eigh_impl(m, tol);
}

SpectralDecomposition<double> symmetric_eig(const RealMatrix& m, double tol) {
  return eigh_impl(m, tol);
}

SpectralDecomposition<double> tridiagonal_eig(std::vector<double> diagonal,
                                              std::vector<double> offdiagonal) {
  const std::size_t n = diagonal.size();
  if (n == 0) return {};
  if (offdiagonal.size() + 1 != n) {
    throw LinalgError("tridiagonal_eig: off-diagonal must have n-1 entries");
  }
  RealMatrix zt = RealMatrix::identity(n);
  tql_implicit(diagonal, offdiagonal, zt);
  RealMatrix z(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) z(r, c) = zt(c, r);
  return sort_and_fix_phase<double>(std::move(diagonal), z);
}

}  // namespace entest
