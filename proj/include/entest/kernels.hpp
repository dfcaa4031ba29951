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

#include <complex>
#include <cstddef>
#include <string_view>

namespace entest::kernels {

using cplx = std::complex<double>;

/// Row-major dense kernels. Every entry point has a scalar reference
/// implementation; vectorized variants must agree with it to rounding.
struct KernelTable {
  std::string_view name;

  /// C(m x n) = A(m x k) * B(k x n). C must not alias A or B.
  void (*zgemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                const cplx* b, cplx* c);
  void (*dgemm)(std::size_t m, std::size_t n, std::size_t k, const double* a,
                const double* b, double* c);

  /// sum_i w[i] * Re(x[i] * conj(y[i]))
  double (*weighted_re_dot)(std::size_t len, const double* w, const cplx* x,
                            const cplx* y);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table() noexcept;

/// Table used by the library. Picks the widest supported variant on first
/// use; the ENTEST_KERNEL environment variable ("scalar" or "avx2") overrides.
const KernelTable& active() noexcept;

/// Force a table for the rest of the process (tests, benchmarks).
void set_active(const KernelTable& table) noexcept;

namespace detail {
void zgemm_scalar(std::size_t, std::size_t, std::size_t, const cplx*,
                  const cplx*, cplx*);
void dgemm_scalar(std::size_t, std::size_t, std::size_t, const double*,
                  const double*, double*);
double weighted_re_dot_scalar(std::size_t, const double*, const cplx*,
                              const cplx*);

#if defined(ENTEST_HAVE_AVX2)
void zgemm_avx2(std::size_t, std::size_t, std::size_t, const cplx*,
                const cplx*, cplx*);
void dgemm_avx2(std::size_t, std::size_t, std::size_t, const double*,
                const double*, double*);
double weighted_re_dot_avx2(std::size_t, const double*, const cplx*,
                            const cplx*);
#endif
}  // namespace detail

}  // namespace entest::kernels
