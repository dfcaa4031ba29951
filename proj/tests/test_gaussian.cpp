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
#include "entest/gaussian.hpp"
#include "support.hpp"

using namespace entest;
using testing::rel;

namespace {

double dtilde_oracle(const TwoModeCovariance& cm) {
  const double delta = cm.a * cm.a + cm.b * cm.b - 2.0 * cm.c_plus * cm.c_minus;
  const double det = (cm.a * cm.b - cm.c_plus * cm.c_plus) *
                     (cm.a * cm.b - cm.c_minus * cm.c_minus);
  return std::sqrt(0.5 * (delta - std::sqrt(delta * delta - 4.0 * det)));
}

// (2 pi)^{-1} int exp(-x^T D x / 2) (x^T S1 x)(x^T S2 x) dx for D = A + iB, by
// Gauss-Hermite quadrature against the real part A.
cplx quartic_by_quadrature(const RealMatrix& a, const RealMatrix& b, const RealMatrix& s1,
                           const RealMatrix& s2, int order) {
  const auto [t, w] = testing::gauss_hermite(order);
  // A^{-1} = L L^T with L lower triangular
  const RealMatrix ainv = inverse(a);
  const double l00 = std::sqrt(ainv(0, 0));
  const double l10 = ainv(1, 0) / l00;
  const double l11 = std::sqrt(ainv(1, 1) - l10 * l10);
  auto quad = [](const RealMatrix& m, double x0, double x1) {
    return m(0, 0) * x0 * x0 + 2.0 * m(0, 1) * x0 * x1 + m(1, 1) * x1 * x1;
  };
  cplx sum{};
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const double z0 = std::sqrt(2.0) * t[i];
      const double z1 = std::sqrt(2.0) * t[j];
      const double x0 = l00 * z0;
      const double x1 = l10 * z0 + l11 * z1;
      const cplx phase = std::exp(cplx{0.0, -0.5 * quad(b, x0, x1)});
      sum += w[i] * w[j] * quad(s1, x0, x1) * quad(s2, x0, x1) * phase;
    }
  }
  // dx = 2 det(L) dt; (2 pi)^{-1}
  return sum * (2.0 * l00 * l11) / (2.0 * M_PI);
}

}  // namespace

TEST_CASE("Gauss-Hermite rule integrates low moments exactly") {
  const auto [t, w] = testing::gauss_hermite(20);
  double m0 = 0.0, m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    m0 += w[i];
    m2 += w[i] * t[i] * t[i];
    m4 += w[i] * std::pow(t[i], 4);
  }
  CHECK(rel(m0, std::sqrt(M_PI)) < 1e-13);
  CHECK(rel(m2, std::sqrt(M_PI) / 2.0) < 1e-13);
  CHECK(rel(m4, 3.0 * std::sqrt(M_PI) / 4.0) < 1e-13);
}

TEST_CASE("quartic Gaussian moment matches quadrature") {
  const RealMatrix a(2, 2, {1.3, 0.4, 0.4, 0.9});
  const RealMatrix s1(2, 2, {0.7, -0.2, -0.2, 0.5});
  const RealMatrix s2(2, 2, {-0.3, 0.6, 0.6, 1.1});
  const RealMatrix zero(2, 2);
  const cplx real_case = wick_quartic_moment(to_complex(a), s1, s2);
  const cplx real_quad = quartic_by_quadrature(a, zero, s1, s2, 12);
  CHECK(std::abs(real_case - real_quad) < 1e-12 * std::abs(real_quad));

  const RealMatrix b(2, 2, {0.2, -0.1, -0.1, 0.15});
  const ComplexMatrix d = to_complex(a) + to_complex(b) * cplx{0.0, 1.0};
  const cplx complex_case = wick_quartic_moment(d, s1, s2);
  const cplx complex_quad = quartic_by_quadrature(a, b, s1, s2, 90);
  CHECK(std::abs(complex_case - complex_quad) < 1e-9 * std::abs(complex_quad));
}

TEST_CASE("twin-beam covariance is pure and symplectic") {
  for (double a : {0.5, 0.8, 2.0, 10.0}) {
    const TwoModeCovariance cm = twin_beam(a);
    CHECK_NOTHROW(validate_physical(cm));
    const auto nu = symplectic_spectrum(cm.matrix());
    CHECK(std::abs(nu[0] - 0.5) < 1e-10);
    CHECK(std::abs(nu[1] - 0.5) < 1e-10);
    CHECK(rel(dtilde_symmetric(cm), dtilde_oracle(cm)) < 1e-10);
  }
  TwoModeCovariance bad{0.4, 0.4, 0.0, 0.0};
  CHECK_THROWS_AS(validate_physical(bad), std::invalid_argument);
  const RealMatrix omega = symplectic_form();
  CHECK(omega(0, 1) == 1.0);
  CHECK(omega(1, 0) == -1.0);
  CHECK(omega(2, 3) == 1.0);
}

TEST_CASE("partial-transpose spectrum matches the invariant formula") {
  const TwoModeCovariance cases[] = {
      {1.0, 1.0, 0.8, -0.8}, {1.5, 0.9, 0.6, -0.4}, {2.0, 2.0, 0.3, 0.2}, {0.7, 1.2, 0.0, 0.0}};
  for (const auto& cm : cases) {
    const PartialTransposeSpectrum pt = symplectic_eig_pt(cm);
    CHECK(rel(pt.d_minus, dtilde_oracle(cm)) < 1e-10);
    CHECK(pt.separable == (pt.d_minus >= 0.5));
  }
  CHECK_FALSE(symplectic_eig_pt(twin_beam(1.0)).separable);
}

TEST_CASE("characteristic function") {
  const TwoModeCovariance cm = twin_beam(1.3);
  const double origin[] = {0.0, 0.0, 0.0, 0.0};
  CHECK(std::abs(gaussian_char_fn(cm, origin) - 1.0) < 1e-15);
  double prev = 1.0;
  for (double s : {0.2, 0.5, 1.0}) {
    const double g[] = {s, 0.3 * s, -0.5 * s, s};
    const cplx chi = gaussian_char_fn(cm, g);
    CHECK(std::abs(chi.imag()) < 1e-15);
    CHECK(chi.real() < prev);
    prev = chi.real();
  }
}

TEST_CASE("measure round trips and slopes") {
  for (GaussianMeasure m : {GaussianMeasure::LogNegativity, GaussianMeasure::LinearEntropy,
                            GaussianMeasure::EpsS, GaussianMeasure::EpsB}) {
    for (double d : {0.05, 0.2, 0.4}) {
      const double e = gaussian_measure(m, d);
      CHECK(rel(gaussian_measure_inverse(m, e), d) < 1e-12);
      const double h = 1e-7;
      const double fd = (gaussian_measure(m, d + h) - gaussian_measure(m, d - h)) / (2 * h);
      CHECK(rel(gaussian_measure_slope(m, d), fd) < 1e-6);
    }
    CHECK(gaussian_measure(m, 0.6) == 0.0);
  }
  CHECK(gaussian_measure(GaussianMeasure::LogNegativity, 0.25) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("phase-space QFI of the twin beam") {
  for (double d : {0.02, 0.1, 0.3, 0.45}) {
    CHECK(rel(wick_qfi(twin_beam_from_dtilde(d), twin_beam_dsigma(d)), 1.0 / (d * d)) < 1e-10);
    const double h = 1e-6;
    const RealMatrix fd = (twin_beam_from_dtilde(d + h).matrix() -
                           twin_beam_from_dtilde(d - h).matrix()) *
                          (0.5 / h);
    CHECK(max_abs_diff(fd, twin_beam_dsigma(d)) < 1e-6 * max_abs(fd));
  }
  CHECK(std::abs(wick_qfi_pure(0.7, GaussianMeasure::LogNegativity) - 1.0) < 1e-10);
  CHECK_THROWS_AS(wick_qfi(squeezed_thermal(0.5, 0.3), squeezed_thermal_dsigma(0.5, 0.3, 0)),
                  DomainError);
}

TEST_CASE("Fock amplitudes reproduce the phase-space QFI") {
  for (GaussianMeasure m : {GaussianMeasure::LogNegativity, GaussianMeasure::LinearEntropy}) {
    for (double e : {0.2, 0.5, 0.8}) {
      const FockTwinBeam f = fock_twin_beam(e, m, fock_cutoff(e, m));
      CHECK(f.deficit < 1e-12);
      CHECK(rel(f.qfi, wick_qfi_pure(e, m)) < 1e-8);
      // amplitude derivatives against finite differences
      const double h = 1e-6;
      const FockTwinBeam up = fock_twin_beam(e + h, m, f.amplitudes.size());
      const FockTwinBeam dn = fock_twin_beam(e - h, m, f.amplitudes.size());
      for (std::size_t n = 0; n < 5; ++n) {
        const double fd = (up.amplitudes[n] - dn.amplitudes[n]) / (2 * h);
        CHECK(std::abs(fd - f.derivatives[n]) < 1e-7);
      }
    }
  }
  const double e = 0.5;
  CHECK(rel(wick_qfi_pure(e, GaussianMeasure::LinearEntropy), 16.0 / 3.0) < 1e-10);
  CHECK_THROWS_AS(fock_twin_beam(2.0, GaussianMeasure::LogNegativity, 3), DomainError);
}

TEST_CASE("squeezed thermal family") {
  const double r = 0.4, n = 0.7;
  const TwoModeCovariance cm = squeezed_thermal(r, n);
  CHECK_NOTHROW(validate_physical(cm));
  CHECK(rel(squeezed_thermal_dtilde(r, n), dtilde_oracle(cm)) < 1e-12);
  CHECK(rel(squeezed_thermal_purity(n), 1.0 / (2.0 * n + 1.0)) < 1e-15);
  const double h = 1e-6;
  const RealMatrix dr =
      (squeezed_thermal(r + h, n).matrix() - squeezed_thermal(r - h, n).matrix()) * (0.5 / h);
  const RealMatrix dn =
      (squeezed_thermal(r, n + h).matrix() - squeezed_thermal(r, n - h).matrix()) * (0.5 / h);
  CHECK(max_abs_diff(dr, squeezed_thermal_dsigma(r, n, 0)) < 1e-7);
  CHECK(max_abs_diff(dn, squeezed_thermal_dsigma(r, n, 1)) < 1e-7);
}

TEST_CASE("squeezed thermal QFI: closed form against the Fock oracle") {
  for (double r : {0.2, 0.8}) {
    for (double n : {0.2, 1.0}) {
      const RealMatrix closed = sts_qfi_matrix(r, n).H;
      const RealMatrix fock = sts_fock_qfi(r, n).H;
      CHECK(rel(fock(0, 0), closed(0, 0)) < 1e-6);
      CHECK(rel(fock(1, 1), closed(1, 1)) < 1e-6);
      CHECK(std::abs(fock(0, 1)) < 1e-6 * closed(0, 0));
    }
  }
}

TEST_CASE("squeezed thermal transfer matrix and bounds") {
  auto r_of = [](double d, double mu) { return -0.5 * std::log(2.0 * d * mu); };
  auto n_of = [](double mu) { return 0.5 * (1.0 / mu - 1.0); };
  const double d = 0.2, mu = 0.6, h = 1e-6;
  const RealMatrix b = sts_transfer(d, mu);
  CHECK(std::abs(b(0, 0) - (r_of(d + h, mu) - r_of(d - h, mu)) / (2 * h)) < 1e-7);
  CHECK(std::abs(b(0, 1)) < 1e-15);
  CHECK(std::abs(b(1, 0) - (r_of(d, mu + h) - r_of(d, mu - h)) / (2 * h)) < 1e-7);
  CHECK(std::abs(b(1, 1) - (n_of(mu + h) - n_of(mu - h)) / (2 * h)) < 1e-6);

  for (double m : {0.3, 0.6, 0.9}) {
    const StsBound s = sts_bounds(GaussianMeasure::Dtilde, d, m);
    CHECK(rel(s.inverse(0, 0), d * d) < 1e-12);
  }
  const StsBound es = sts_bounds(GaussianMeasure::EpsS, 0.4, 0.5);
  CHECK(rel(es.var_bound, 0.36) < 1e-12);
  const double eb = 1.0 - 1.0 / std::sqrt(2.0);
  CHECK(std::abs(sts_bounds(GaussianMeasure::EpsB, eb, 0.5).var_bound - 1.0 / 16.0) < 1e-12);
}
