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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entest/estimation.hpp"
#include "entest/linalg.hpp"

namespace entest {

enum class QubitFamily { Schmidt, Mixture, Werner, Horodecki };
enum class EntanglementMeasure { Negativity, LinearEntropy, LurViolation };
enum class Branch { None, Lower, Upper };

std::string_view to_string(QubitFamily f) noexcept;
std::string_view to_string(EntanglementMeasure m) noexcept;
std::string_view to_string(Branch b) noexcept;

/// Peak of the LUR violation and its value.
inline constexpr double kLurPeak = 4.0 / 13.0;
inline constexpr double kLurMax = 2.0 / 1125.0;

// --- states ----------------------------------------------------------------

/// sqrt(q)|00> + sqrt(1-q)|11>
std::vector<cplx> schmidt_vector(double q);
ComplexMatrix schmidt_state(double q);

/// exp(i theta X(x)X) with cos(theta) = sqrt(q).
ComplexMatrix orbit_unitary(double q);

/// U(q) [p|00><00| + (1-p)|11><11|] U(q)^dagger
ComplexMatrix orbit_mixture(double p, double q);

/// (1-p)/4 I + p |psi_q><psi_q|
ComplexMatrix werner_state(double p, double q);

/// 3x3 bound entangled family, basis {down, 0, up} -> {0, 1, 2}.
ComplexMatrix horodecki_state(double a);

BipartiteDims dims_of(QubitFamily family) noexcept;

// --- parametrized families (analytic derivatives attached) ------------------

ParamFamily schmidt_family();
ParamFamily orbit_mixture_family();
ParamFamily werner_family();
ParamFamily horodecki_family();
ParamFamily make_family(QubitFamily family);

/// Pointwise (U_A (x) U_B) rho (U_A (x) U_B)^dagger.
ParamFamily locally_rotated(const ParamFamily& base, const ComplexMatrix& ua,
                            const ComplexMatrix& ub);

// --- closed-form measures ----------------------------------------------------

double schmidt_negativity(double q);
double schmidt_linear_entropy(double q);
double mixture_negativity(double p, double q);
double mixture_purity(double p);
double werner_negativity(double p, double q);
double werner_purity(double p);
/// Smallest p at which the Werner-like state becomes entangled.
double werner_threshold(double q);
double lur_violation(double a);
double lur_violation_slope(double a);
/// a such that lur_violation(a) = eps on the requested branch.
double lur_violation_inverse(double eps, Branch branch);

/// Closed-form value of a measure at natural parameters. Throws DomainError
/// for unsupported (family, measure) pairs.
double measure_value(QubitFamily family, EntanglementMeasure measure,
                     std::span<const double> params);

/// Gradient of the measure with respect to the natural parameters.
std::vector<double> measure_gradient(QubitFamily family,
                                     EntanglementMeasure measure,
                                     std::span<const double> params);

// --- reparametrizations -----------------------------------------------------

/// Transfer matrix from (p, q) to (mu, eps_N) on the branch p < 1/2, q <= 1/2.
RealMatrix mixture_transfer(double mu, double eps);

/// Natural mixture parameters (p, q) from (mu, eps_N).
std::vector<double> mixture_params(double mu, double eps);

/// Werner q in (0, 1/2] with werner_negativity(p, q) = eps (bisection).
double werner_q_for(double eps, double p);
/// Werner p with werner_negativity(p, q) = eps.
double werner_p_for(double eps, double q);

enum class BoundStatus { Ok, Divergent, Undefined, Edge };
std::string_view to_string(BoundStatus s) noexcept;

struct MeasureBound {
  QubitFamily family = QubitFamily::Schmidt;
  EntanglementMeasure measure = EntanglementMeasure::Negativity;
  Branch branch = Branch::None;
  std::vector<double> params;  // natural parameters
  double value = 0.0;          // measure value
  double qfi = 0.0;            // 1 / var_bound
  double var_bound = 0.0;
  double qsnr = 0.0;
  bool singular = false;
  BoundStatus status = BoundStatus::Ok;
};

/// Bound on the measure at natural parameters: var = g^T H^{-1} g with g the
/// measure gradient and H the numeric QFI matrix.
MeasureBound bound_at_params(QubitFamily family, EntanglementMeasure measure,
                             std::span<const double> params,
                             Branch branch = Branch::None);

/// Companion coordinate used to complete the chart of a two-parameter family.
struct Companion {
  std::string name;  // "mu" (mixture), "p" or "q" (Werner)
  double value = 0.0;
};

/// Bound as a function of the measure value.
MeasureBound qfi_vs_measure(QubitFamily family, EntanglementMeasure measure,
                            double eps, std::optional<Companion> companion,
                            Branch branch);

// --- closed-form QFI catalogue ----------------------------------------------

enum class Chart { Q, PQ, MuNegativity, Negativity, LinearEntropy };

/// Inverse QFI matrix in the given chart.
RealMatrix closed_form_qfi_inverse(QubitFamily family, Chart chart,
                                   std::span<const double> coords);
RealMatrix closed_form_qfi(QubitFamily family, Chart chart,
                           std::span<const double> coords);

}  // namespace entest
