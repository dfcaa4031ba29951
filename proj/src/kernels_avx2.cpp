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

// Compiled with -mavx2 -mfma. Only reachable through avx2_table(), which
// checks the CPU first.

#include <immintrin.h>

#include <algorithm>

#include "entest/kernels.hpp"

namespace entest::kernels::detail {

void zgemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                const cplx* b, cplx* c) {
  std::fill(c, c + m * n, cplx{});
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = reinterpret_cast<double*>(c + i * n);
    for (std::size_t l = 0; l < k; ++l) {
      const double ar = a[i * k + l].real();
      const double ai = a[i * k + l].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const double* brow = reinterpret_cast<const double*>(b + l * n);
      const __m256d var = _mm256_set1_pd(ar);
      const __m256d vai = _mm256_set1_pd(ai);
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        const __m256d vb = _mm256_loadu_pd(brow + 2 * j);
        const __m256d vbswap = _mm256_permute_pd(vb, 0b0101);
        // (ar*br - ai*bi, ar*bi + ai*br) for two complex lanes
        const __m256d prod =
            _mm256_fmaddsub_pd(var, vb, _mm256_mul_pd(vai, vbswap));
        const __m256d vc = _mm256_loadu_pd(crow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(vc, prod));
      }
      for (; j < n; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        crow[2 * j] += ar * br - ai * bi;
        crow[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
}

void dgemm_avx2(std::size_t m, std::size_t n, std::size_t k, const double* a,
                const double* b, double* c) {
  std::fill(c, c + m * n, 0.0);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double av = a[i * k + l];
      if (av == 0.0) continue;
      const double* brow = b + l * n;
      const __m256d va = _mm256_set1_pd(av);
      std::size_t j = 0;
      for (; j < n4; j += 4) {
        const __m256d vc = _mm256_loadu_pd(crow + j);
        _mm256_storeu_pd(crow + j,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j), vc));
      }
      for (; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

double weighted_re_dot_avx2(std::size_t len, const double* w, const cplx* x,
                            const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    const __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    // (w0, w0, w1, w1)
    const __m256d vw = _mm256_permute4x64_pd(
        _mm256_castpd128_pd256(_mm_loadu_pd(w + i)), 0b01010000);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(vx, vy), vw, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < len; ++i) {
    total += w[i] * (x[i].real() * y[i].real() + x[i].imag() * y[i].imag());
  }
  return total;
}

}  // namespace entest::kernels::detail
