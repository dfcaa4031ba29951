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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "entest/kernels.hpp"

namespace entest::kernels {

namespace {

constexpr KernelTable kScalar{
    "scalar",
    &detail::zgemm_scalar,
    &detail::dgemm_scalar,
    &detail::weighted_re_dot_scalar,
};

#if defined(ENTEST_HAVE_AVX2)
constexpr KernelTable kAvx2{
    "avx2",
    &detail::zgemm_avx2,
    &detail::dgemm_avx2,
    &detail::weighted_re_dot_avx2,
};

bool cpu_has_avx2() noexcept {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
#endif

const KernelTable& pick_default() noexcept {
  const char* env = std::getenv("ENTEST_KERNEL");
  const std::string_view choice = env ? env : "";
  if (choice == "scalar") return kScalar;
  if (const KernelTable* wide = avx2_table()) return *wide;
  return kScalar;
}

std::atomic<const KernelTable*> g_active{nullptr};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(ENTEST_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  const KernelTable* table = g_active.load(std::memory_order_acquire);
  if (table == nullptr) {
    const KernelTable* chosen = &pick_default();
    const KernelTable* expected = nullptr;
    g_active.compare_exchange_strong(expected, chosen,
                                     std::memory_order_acq_rel);
    table = g_active.load(std::memory_order_acquire);
  }
  return *table;
}

void set_active(const KernelTable& table) noexcept {
  g_active.store(&table, std::memory_order_release);
}

}  // namespace entest::kernels
