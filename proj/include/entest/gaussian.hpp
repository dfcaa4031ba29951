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

// Two-mode Gaussian states. Quadrature order is (q1, p1, q2, p2) and the
// vacuum has variance 1/2, so a two-mode state is separable iff the smallest
// symplectic eigenvalue of its partial transpose is >= 1/2.

#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "entest/estimation.hpp"
#include "entest/linalg.hpp"

namespace entest {

/// Standard form: A = diag(a, a), B = diag(b, b), C = diag(c_plus, c_minus).
struct TwoModeCovariance {
  double a = 0.5;
  double b = 0.5;
  double c_plus = 0.0;
  double c_minus = 0.0;

  RealMatrix matrix() const;
};

/// Omega = diag(J, J) with J = [[0, 1], [-1, 0]].
RealMatrix symplectic_form();

/// Throws LinalgError unless a, b >= 1/2 and the symplectic spectrum is
/// >= 1/2 (tolerance 1e-12).
void validate_physical(const TwoModeCovariance& cm);

/// Symplectic eigenvalues (ascending) of a 4x4 positive-definite matrix.
std::array<double, 2> symplectic_spectrum(const RealMatrix& sigma);

struct PartialTransposeSpectrum {
  double d_minus = 0.0;
  double d_plus = 0.0;
  bool separable = false;
};

/// General route: spectrum of i S Omega S with S the square root of the
/// partially transposed covariance matrix.
PartialTransposeSpectrum symplectic_eig_pt(const TwoModeCovariance& cm);

/// sqrt((a - c_plus)(a + c_minus)); symmetric states only.
double dtilde_symmetric(const TwoModeCovariance& cm);

/// exp(-1/2 G^T sigma G) for a zero-mean state.
cplx gaussian_char_fn(const TwoModeCovariance& cm, std::span<const double> g);

// --- families ----------------------------------------------------------------

/// Twin-beam with local variance a >= 1/2.
TwoModeCovariance twin_beam(double a);
TwoModeCovariance twin_beam_from_dtilde(double d);
/// d sigma / d dtilde along the twin-beam family.
RealMatrix twin_beam_dsigma(double d);

TwoModeCovariance squeezed_thermal(double r, double n_thermal);
/// d sigma / d r (j = 0) or d sigma / d N (j = 1).
RealMatrix squeezed_thermal_dsigma(double r, double n_thermal, std::size_t j);
double squeezed_thermal_dtilde(double r, double n_thermal);
double squeezed_thermal_purity(double n_thermal);

// --- measures ----------------------------------------------------------------

enum class GaussianMeasure { Dtilde, LogNegativity, LinearEntropy, EpsS, EpsB };
std::string_view to_string(GaussianMeasure m) noexcept;

/// Forward map from dtilde; every measure except Dtilde is 0 for d > 1/2.
double gaussian_measure(GaussianMeasure m, double d);
/// dtilde for a measure value.
double gaussian_measure_inverse(GaussianMeasure m, double eps);
/// d(eps) / d(dtilde).
double gaussian_measure_slope(GaussianMeasure m, double d);

// --- phase-space QFI -----------------------------------------------------------

/// Integral over R^n of (x^T S1 x)(x^T S2 x) exp(-x^T D x / 2) / (2 pi)^{n/2}
/// for complex symmetric D with positive-definite real part.
cplx wick_quartic_moment(const ComplexMatrix& d, const RealMatrix& s1,
                         const RealMatrix& s2);

/// The 8x8 matrix 1/2 sigma_y (x) I2 (x) sigma_y.
RealMatrix wick_phase_matrix();

/// QFI of a pure two-mode Gaussian state along d sigma. Throws DomainError for
/// mixed states.
double wick_qfi(const TwoModeCovariance& cm, const RealMatrix& dsigma);

/// Twin-beam QFI for a measure value.
double wick_qfi_pure(double eps, GaussianMeasure m);

struct FockTwinBeam {
  std::vector<double> amplitudes;
  std::vector<double> derivatives;
  double deficit = 0.0;  // 1 - sum f_n^2
  double qfi = 0.0;
};

/// Smallest cutoff with norm deficit below 1e-12, doubled.
std::size_t fock_cutoff(double eps, GaussianMeasure m);

/// Fock amplitudes f_n, n < n_max, for eps = eps_N or eps_L.
FockTwinBeam fock_twin_beam(double eps, GaussianMeasure m, std::size_t n_max);

// --- squeezed thermal states ------------------------------------------------------

/// Closed-form QFI matrix in (r, N).
QfiResult sts_qfi_matrix(double r, double n_thermal);

struct FockOracleOptions {
  std::size_t basis = 0;   // per-block dimension; 0 picks automatically
  double tail = 1e-12;     // thermal population cut
};

/// Numeric QFI matrix in (r, N) from the truncated Fock representation,
/// summed over the blocks of fixed photon-number difference.
QfiResult sts_fock_qfi(double r, double n_thermal,
                       const FockOracleOptions& options = {});

/// Transfer matrix from (r, N) to (dtilde, mu).
RealMatrix sts_transfer(double d, double mu);

struct StsBound {
  GaussianMeasure measure = GaussianMeasure::Dtilde;
  double value = 0.0;
  double dtilde = 0.0;
  double mu = 0.0;
  RealMatrix inverse;   // H(dtilde, mu)^{-1}
  double var_bound = 0.0;
  double qsnr = 0.0;
};

StsBound sts_bounds(GaussianMeasure m, double eps, double mu);

}  // namespace entest
