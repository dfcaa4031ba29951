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

#include "entest/random.hpp"

#include <numbers>

#include "entest/estimation.hpp"

namespace entest {

double CounterRng::uniform() noexcept { return counter_uniform(seed_, index_++); }

double CounterRng::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ComplexMatrix random_hermitian(std::size_t n, CounterRng& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z{rng.normal(), rng.normal()};
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

ComplexMatrix random_unitary(std::size_t n, CounterRng& rng) {
  ComplexMatrix g(n, n);
  for (auto& z : g.flat()) z = cplx{rng.normal(), rng.normal()};
  // modified Gram-Schmidt on the columns
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t k = 0; k < c; ++k) {
      cplx dot{};
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(g(r, k)) * g(r, c);
      for (std::size_t r = 0; r < n; ++r) g(r, c) -= dot * g(r, k);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) g(r, c) /= norm;
  }
  return g;
}

ComplexMatrix random_density(std::size_t n, CounterRng& rng) {
  ComplexMatrix g(n, n);
  for (auto& z : g.flat()) z = cplx{rng.normal(), rng.normal()};
  ComplexMatrix rho = matmul(g, adjoint(g));
  const double tr = trace(rho).real();
  rho *= cplx{1.0 / tr, 0.0};
  return (rho + adjoint(rho)) * cplx{0.5, 0.0};
}

}  // namespace entest
