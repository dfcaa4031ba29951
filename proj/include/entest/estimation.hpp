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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "entest/linalg.hpp"

namespace entest {

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double x) const noexcept { return x > lo && x < hi; }
};

using StateFn = std::function<ComplexMatrix(std::span<const double>)>;
using DerivativeFn =
    std::function<ComplexMatrix(std::span<const double>, std::size_t)>;

/// A smooth map from a parameter vector to density matrices.
struct ParamFamily {
  std::string name;
  std::vector<std::string> parameters;
  std::vector<Interval> domain;
  StateFn state;
  DerivativeFn derivative;  // optional

  std::size_t arity() const noexcept { return parameters.size(); }
  bool has_analytic_derivative() const noexcept {
    return static_cast<bool>(derivative);
  }

  /// Throws DomainError naming the first coordinate outside its interval.
  void check_point(std::span<const double> point) const;
};

/// Finite-difference step for a parameter value.
double fd_step(double value) noexcept;

struct DerivativeOptions {
  bool use_analytic = true;
  /// Combine steps h and h/2 (central differences only).
  bool richardson = false;
};

struct StateDerivative {
  ComplexMatrix value;
  bool one_sided = false;  // fell back to a one-sided stencil at a boundary
  bool analytic = false;
};

StateDerivative state_derivative(const ParamFamily& family,
                                 std::span<const double> point, std::size_t j,
                                 const DerivativeOptions& options = {});

inline constexpr double kKernelCutoff = 1e-10;
inline constexpr double kPinvThreshold = 1e-10;

struct SldResult {
  ComplexMatrix L;
  std::size_t dropped = 0;  // (n, m) pairs with p_n + p_m below the cutoff
};

SldResult sld(const ComplexMatrix& rho, const ComplexMatrix& drho,
              double cutoff = kKernelCutoff);

struct QfiResult {
  RealMatrix H;
  RealMatrix Hinv;
  std::vector<double> var_bounds;
  bool singular = false;
  std::size_t dropped = 0;
  /// max relative gap between the eigen-sum and Tr[rho L_i L_j] routes
  double route_gap = 0.0;
  bool one_sided = false;
};

/// Fills Hinv, var_bounds and singular from H.
QfiResult finalize_qfi(RealMatrix H);

struct QfiOptions {
  double cutoff = kKernelCutoff;
  /// Unit-trace and positivity check on rho. Disabled for unnormalized
  /// blocks of a block-diagonal state.
  bool require_density = true;
};

/// QFI matrix from a state and its parameter derivatives.
QfiResult qfi_from_derivatives(const ComplexMatrix& rho,
                               std::span<const ComplexMatrix> derivatives,
                               const QfiOptions& options = {});

/// Raw (unfinalized) QFI matrix contribution, for summing over blocks.
RealMatrix qfi_kernel(const ComplexMatrix& rho,
                      std::span<const ComplexMatrix> derivatives,
                      const QfiOptions& options, std::size_t* dropped,
                      double* route_gap);

double qfi_scalar(const ComplexMatrix& rho, const ComplexMatrix& drho);

QfiResult qfi_matrix(const ParamFamily& family, std::span<const double> point,
                     const DerivativeOptions& options = {});

/// 4 [<dpsi|dpsi> - |<psi|dpsi>|^2] for a normalized state vector.
double pure_state_qfi(std::span<const cplx> psi, std::span<const cplx> dpsi);

/// H' = B H B^T with B(i, j) = d(old_j)/d(new_i).
QfiResult reparametrize(const QfiResult& qfi, const RealMatrix& transfer);

/// Throws LinalgError unless every effect is Hermitian PSD and they sum to I.
void validate_povm(std::span<const ComplexMatrix> povm, double tol = 1e-10);

double classical_fisher(const ComplexMatrix& rho, const ComplexMatrix& drho,
                        std::span<const ComplexMatrix> povm);
double classical_fisher(const ParamFamily& family,
                        std::span<const double> point, std::size_t j,
                        std::span<const ComplexMatrix> povm);

/// Projectors onto the eigenspaces of an SLD, with the matching eigenvalue.
struct SldPovm {
  std::vector<ComplexMatrix> projectors;
  std::vector<double> values;
};

SldPovm sld_povm(const ComplexMatrix& L, double degeneracy_tol = 1e-9);

struct EstimationBudget {
  double value = 0.0;
  double qfi = 0.0;
  double qsnr = 0.0;
  double delta = 0.0;
  double measurements = 0.0;  // M_delta; +inf when the QSNR vanishes
};

/// Q = value^2 H and M_delta = 9 / (delta^2 Q).
EstimationBudget budget(double value, double qfi, double delta);
double measurements_for(double qsnr, double delta);

struct SimulationResult {
  std::size_t shots = 0;
  double mean = 0.0;
  double bias = 0.0;
  double empirical_var = 0.0;  // variance of the M-shot mean
  double crb = 0.0;            // 1 / (M H)
  double ratio = 0.0;          // empirical_var / crb
};

/// Counter-based uniform variate in [0, 1): the stream for a seed can be
/// split across workers and reproduces the serial sequence.
double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept;

/// Samples the SLD measurement M times and applies the locally unbiased
/// estimator value + l(x) / H shot by shot.
SimulationResult simulate_crb(const ParamFamily& family,
                              std::span<const double> point, std::size_t j,
                              std::size_t shots, std::uint64_t seed);

}  // namespace entest
