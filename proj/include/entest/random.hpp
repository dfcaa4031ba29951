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

#include <cstdint>

#include "entest/linalg.hpp"

namespace entest {

/// Sequential view over counter_uniform(seed, i).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t start = 0) noexcept
      : seed_(seed), index_(start) {}

  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, one variate per call).
  double normal() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
};

/// Entries with independent normal real and imaginary parts, symmetrized.
ComplexMatrix random_hermitian(std::size_t n, CounterRng& rng);

/// Haar-distributed unitary (Gram-Schmidt on a complex Gaussian matrix).
ComplexMatrix random_unitary(std::size_t n, CounterRng& rng);

/// Random density matrix G G^dagger / Tr.
ComplexMatrix random_density(std::size_t n, CounterRng& rng);

}  // namespace entest
