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

#include <cmath>

#include "doctest.h"
#include "entest/errors.hpp"
#include "entest/qubit_families.hpp"
#include "entest/random.hpp"
#include "support.hpp"

using namespace entest;
using testing::rel;

namespace {

std::vector<std::vector<double>> sample_points(QubitFamily f) {
  switch (f) {
    case QubitFamily::Schmidt: return {{0.07}, {0.33}, {0.81}};
    case QubitFamily::Mixture: return {{0.12, 0.4}, {0.7, 0.25}, {0.31, 0.88}};
    case QubitFamily::Werner: return {{0.15, 0.6}, {0.5, 0.1}, {0.9, 0.45}};
    case QubitFamily::Horodecki: return {{0.03}, {0.5}, {0.97}};
  }
  return {};
}

const QubitFamily kAll[] = {QubitFamily::Schmidt, QubitFamily::Mixture,
                            QubitFamily::Werner, QubitFamily::Horodecki};

}  // namespace

TEST_CASE("family states are valid densities") {
  for (QubitFamily f : kAll) {
    const ParamFamily fam = make_family(f);
    for (const auto& x : sample_points(f)) {
      const ComplexMatrix rho = fam.state(x);
      CHECK(rho.rows() == dims_of(f).total());
      CHECK_NOTHROW(validate_density(rho));
    }
  }
}

TEST_CASE("analytic derivatives agree with central differences") {
  for (QubitFamily f : kAll) {
    const ParamFamily fam = make_family(f);
    REQUIRE(fam.has_analytic_derivative());
    for (const auto& x : sample_points(f)) {
      for (std::size_t j = 0; j < fam.arity(); ++j) {
        std::vector<double> up = x, down = x;
        const double h = 1e-6;
        up[j] += h;
        down[j] -= h;
        const ComplexMatrix fd = (fam.state(up) - fam.state(down)) * cplx{0.5 / h, 0.0};
        const ComplexMatrix an = fam.derivative(x, j);
        CHECK(max_abs_diff(fd, an) < 1e-7 * std::max(1.0, max_abs(an)));
      }
    }
  }
}

TEST_CASE("pure two-qubit closed forms") {
  for (int k = 1; k <= 19; ++k) {
    const double q = 0.05 * k;
    const double h = qfi_matrix(schmidt_family(), std::vector<double>{q}).H(0, 0);
    CHECK(rel(h, 1.0 / (q * (1.0 - q))) < 1e-10);
    CHECK(std::abs(negativity(schmidt_state(q), {2, 2}) - schmidt_negativity(q)) < 1e-12);
    const ComplexMatrix ra = partial_trace(schmidt_state(q), {2, 2}, Subsystem::B);
    const double purity = trace_of_product(ra, ra).real();
    CHECK(std::abs(2.0 * (1.0 - purity) - schmidt_linear_entropy(q)) < 1e-12);
  }
}

TEST_CASE("orbit mixture spectrum and QFI") {
  const ComplexMatrix rho = orbit_mixture(0.2, 0.35);
  const auto ev = hermitian_eig(rho);
  CHECK(std::abs(ev.values[0]) < 1e-12);
  CHECK(std::abs(ev.values[1]) < 1e-12);
  CHECK(ev.values[2] == doctest::Approx(0.2));
  CHECK(ev.values[3] == doctest::Approx(0.8));
  CHECK(mixture_purity(0.2) == doctest::Approx(0.68));
  const RealMatrix want = closed_form_qfi(QubitFamily::Mixture, Chart::PQ,
                                          std::vector<double>{0.2, 0.35});
  const RealMatrix got = qfi_matrix(orbit_mixture_family(), std::vector<double>{0.2, 0.35}).H;
  CHECK(max_abs_diff(got, want) < 1e-8 * max_abs(want));
}

TEST_CASE("mixture transfer matrix is the Jacobian of the inverse map") {
  for (double mu : {0.7, 0.85, 0.95}) {
    for (double eps : {0.1, 0.4}) {
      if (eps * eps >= 2 * mu - 1) continue;
      const RealMatrix b = mixture_transfer(mu, eps);
      const double h = 1e-6;
      const auto pm = mixture_params(mu + h, eps);
      const auto mm = mixture_params(mu - h, eps);
      const auto pe = mixture_params(mu, eps + h);
      const auto me = mixture_params(mu, eps - h);
      // rows: new coordinates (mu, eps); columns: old (p, q)
      CHECK(std::abs(b(0, 0) - (pm[0] - mm[0]) / (2 * h)) < 1e-6);
      CHECK(std::abs(b(0, 1) - (pm[1] - mm[1]) / (2 * h)) < 1e-6);
      CHECK(std::abs(b(1, 0) - (pe[0] - me[0]) / (2 * h)) < 1e-6);
      CHECK(std::abs(b(1, 1) - (pe[1] - me[1]) / (2 * h)) < 1e-6);
      const auto pq = mixture_params(mu, eps);
      CHECK(rel(mixture_purity(pq[0]), mu) < 1e-12);
      CHECK(rel(mixture_negativity(pq[0], pq[1]), eps) < 1e-12);
    }
  }
}

TEST_CASE("Werner negativity, threshold and inversions") {
  for (double q : {0.1, 0.3, 0.5, 0.8}) {
    const double thr = werner_threshold(q);
    CHECK(werner_negativity(thr, q) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(negativity(werner_state(thr * 0.999, q), {2, 2}) < 1e-12);
    CHECK(negativity(werner_state(std::min(0.999, thr * 1.01), q), {2, 2}) > 0.0);
    for (double eps : {0.01, 0.2}) {
      const double p = werner_p_for(eps, q);
      CHECK(rel(werner_negativity(p, q), eps) < 1e-12);
    }
  }
  CHECK(werner_threshold(0.5) == doctest::Approx(1.0 / 3.0));
  for (double p : {0.6, 0.9}) {
    const double q = werner_q_for(0.1, p);
    CHECK(rel(werner_negativity(p, q), 0.1) < 1e-10);
  }
  CHECK(werner_purity(1.0) == doctest::Approx(1.0));
}

TEST_CASE("Werner QFI matrix: p entry matches; q entry tends to the pure-state value") {
  for (double p : {0.2, 0.5, 0.8}) {
    for (double q : {0.2, 0.6}) {
      const RealMatrix h = qfi_matrix(werner_family(), std::vector<double>{p, q}).H;
      CHECK(rel(h(0, 0), 3.0 / (1.0 + (2.0 - 3.0 * p) * p)) < 1e-9);
      CHECK(rel(h(1, 1), 2.0 * p * p / (q * (1.0 - q) * (1.0 + p))) < 1e-9);
    }
  }
  const double q = 0.3;
  const RealMatrix nearly_pure =
      qfi_matrix(werner_family(), std::vector<double>{0.999999, q}).H;
  CHECK(rel(nearly_pure(1, 1), 1.0 / (q * (1.0 - q))) < 1e-5);
}

TEST_CASE("Horodecki family is PPT with a single LUR peak") {
  for (double a : {0.01, 0.2, 0.5, 0.8, 0.99}) {
    const auto ev = hermitian_eig(partial_transpose(horodecki_state(a), {3, 3}, Subsystem::A));
    CHECK(ev.values.front() > -1e-12);
  }
  CHECK(std::abs(lur_violation(kLurPeak) - kLurMax) < 1e-15);
  CHECK(std::abs(lur_violation_slope(kLurPeak)) < 1e-15);
  CHECK(lur_violation_slope(0.1) > 0.0);
  CHECK(lur_violation_slope(0.6) < 0.0);
  for (double a : {0.05, 0.5, 0.9}) {
    const double h = 1e-6;
    const double fd = (lur_violation(a + h) - lur_violation(a - h)) / (2 * h);
    CHECK(std::abs(lur_violation_slope(a) - fd) < 1e-9);
  }
  const double lo = lur_violation_inverse(1e-3, Branch::Lower);
  const double hi = lur_violation_inverse(1e-3, Branch::Upper);
  CHECK(lo < kLurPeak);
  CHECK(hi > kLurPeak);
  CHECK(std::abs(lur_violation(lo) - 1e-3) < 1e-14);
  CHECK(std::abs(lur_violation(hi) - 1e-3) < 1e-14);
  CHECK_THROWS_AS(lur_violation_inverse(1e-3, Branch::None), DomainError);
  CHECK_THROWS_AS(lur_violation_inverse(0.01, Branch::Lower), DomainError);
}

TEST_CASE("measure bounds and status flags") {
  const MeasureBound pure = qfi_vs_measure(QubitFamily::Schmidt,
                                           EntanglementMeasure::LinearEntropy, 0.3,
                                           std::nullopt, Branch::None);
  CHECK(rel(pure.var_bound, 4 * 0.3 * 0.7) < 1e-9);
  CHECK(pure.status == BoundStatus::Ok);

  const MeasureBound edge = qfi_vs_measure(QubitFamily::Werner, EntanglementMeasure::Negativity,
                                           0.0, Companion{"q", 0.5}, Branch::None);
  CHECK(edge.status == BoundStatus::Edge);
  CHECK(edge.qsnr == 0.0);

  const double below[] = {0.2, 0.5};
  const MeasureBound undef = bound_at_params(QubitFamily::Werner,
                                             EntanglementMeasure::Negativity, below);
  CHECK(undef.status == BoundStatus::Undefined);
  CHECK(std::isnan(undef.var_bound));

  const double peak[] = {kLurPeak};
  const MeasureBound div = bound_at_params(QubitFamily::Horodecki,
                                           EntanglementMeasure::LurViolation, peak);
  CHECK(div.status == BoundStatus::Divergent);
  CHECK(std::isinf(div.qsnr));

  CHECK_THROWS_AS(qfi_vs_measure(QubitFamily::Werner, EntanglementMeasure::LurViolation, 0.1,
                                 Companion{"q", 0.5}, Branch::None),
                  DomainError);
  CHECK_THROWS_AS(qfi_vs_measure(QubitFamily::Mixture, EntanglementMeasure::Negativity, 0.1,
                                 std::nullopt, Branch::None),
                  DomainError);
}

TEST_CASE("mixture negativity bound is purity independent") {
  for (double eps : {0.2, 0.5}) {
    for (double mu : {0.7, 0.8, 0.95}) {
      if (eps * eps >= 2 * mu - 1) continue;
      const MeasureBound b = qfi_vs_measure(QubitFamily::Mixture,
                                            EntanglementMeasure::Negativity, eps,
                                            Companion{"mu", mu}, Branch::None);
      CHECK(rel(b.var_bound, 1.0 - eps * eps) < 1e-10);
    }
  }
}

TEST_CASE("QFI is invariant under local unitaries") {
  CounterRng rng(41);
  for (QubitFamily f : kAll) {
    const ParamFamily base = make_family(f);
    const auto x = sample_points(f)[1];
    const RealMatrix h0 = qfi_matrix(base, x).H;
    for (int rep = 0; rep < 5; ++rep) {
      const BipartiteDims dims = dims_of(f);
      const ParamFamily rot =
          locally_rotated(base, random_unitary(dims.dim_a, rng), random_unitary(dims.dim_b, rng));
      CHECK(max_abs_diff(qfi_matrix(rot, x).H, h0) < 1e-9 * max_abs(h0));
    }
  }
  CHECK_THROWS_AS(locally_rotated(schmidt_family(), ComplexMatrix::identity(2) * cplx{2.0, 0.0},
                                  ComplexMatrix::identity(2)),
                  LinalgError);
}
