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

#include <algorithm>

#include "entest/kernels.hpp"

namespace entest::kernels::detail {

void zgemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                  const cplx* b, cplx* c) {
  std::fill(c, c + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double ar = a[i * k + l].real();
      const double ai = a[i * k + l].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const cplx* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] += cplx{ar * br - ai * bi, ar * bi + ai * br};
      }
    }
  }
}

void dgemm_scalar(std::size_t m, std::size_t n, std::size_t k,
                  const double* a, const double* b, double* c) {
  std::fill(c, c + m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double av = a[i * k + l];
      if (av == 0.0) continue;
      const double* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

double weighted_re_dot_scalar(std::size_t len, const double* w,
                              const cplx* x, const cplx* y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    acc += w[i] * (x[i].real() * y[i].real() + x[i].imag() * y[i].imag());
  }
  return acc;
}

}  // namespace entest::kernels::detail
