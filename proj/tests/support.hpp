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
#include <cmath>
#include <utility>
#include <vector>

#include "entest/linalg.hpp"

namespace entest::testing {

inline double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Cyclic Jacobi rotations on a real symmetric matrix; ascending eigenvalues.
inline std::vector<double> jacobi_eigenvalues(RealMatrix a) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Real 2n x 2n embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix; every
/// eigenvalue appears twice.
inline RealMatrix real_embedding(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  RealMatrix r(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r(i, j) = h(i, j).real();
      r(i + n, j + n) = h(i, j).real();
      r(i, j + n) = -h(i, j).imag();
      r(i + n, j) = h(i, j).imag();
    }
  return r;
}

inline std::vector<double> hermitian_eigenvalues_oracle(const ComplexMatrix& h) {
  const auto doubled = jacobi_eigenvalues(real_embedding(h));
  std::vector<double> ev;
  for (std::size_t i = 0; i < doubled.size(); i += 2) ev.push_back(doubled[i]);
  return ev;
}

/// Dense complex solve by Gaussian elimination with partial pivoting.
inline std::vector<cplx> solve(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const cplx f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t r = n; r-- > 0;) {
    cplx acc = b[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= a[r][k] * x[k];
    x[r] = acc / a[r][r];
  }
  return x;
}

/// SLD from the vectorized Lyapunov equation (rho L + L rho) / 2 = drho.
inline ComplexMatrix sld_by_vectorization(const ComplexMatrix& rho,
                                          const ComplexMatrix& drho) {
  const std::size_t n = rho.rows();
  std::vector<std::vector<cplx>> a(n * n, std::vector<cplx>(n * n));
  std::vector<cplx> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row = i * n + j;
      b[row] = drho(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        a[row][k * n + j] += 0.5 * rho(i, k);
        a[row][i * n + k] += 0.5 * rho(k, j);
      }
    }
  const auto x = solve(std::move(a), std::move(b));
  ComplexMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) l(i, j) = x[i * n + j];
  return l;
}

/// Gauss-Hermite nodes and weights (weight exp(-t^2)) by Newton iteration on
/// the orthonormal Hermite recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_hermite(int n) {
  std::vector<double> x(n);
  std::vector<double> w(n);
  const double pim4 = std::pow(M_PI, -0.25);
  double z = 0.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 200; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  return {x, w};
}

}  // namespace entest::testing
