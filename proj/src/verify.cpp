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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <set>

#include "entest/estimation.hpp"
#include "entest/gaussian.hpp"
#include "entest/qubit_families.hpp"
#include "entest/random.hpp"
#include "entest/report.hpp"

namespace entest {

namespace {

double rel_err(double got, double want) {
  if (std::isnan(got) || std::isnan(want)) return std::numeric_limits<double>::infinity();
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

class Tracker {
 public:
  void see(double err) {
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    max_ = std::max(max_, err);
  }
  double max() const noexcept { return max_; }

 private:
  double max_ = 0.0;
};

using Suite = std::function<SuiteOutcome(const VerifyOptions&)>;

SuiteOutcome outcome(std::string id, double err, double tol, std::string detail = {}) {
  return {std::move(id), err, tol, err <= tol, std::move(detail)};
}

// --- linalg -------------------------------------------------------------------------

SuiteOutcome eig_reconstruction(const VerifyOptions& opt) {
  CounterRng rng(opt.seed, 1000);
  Tracker t;
  for (std::size_t n : {2u, 3u, 4u, 6u, 9u}) {
    for (int rep = 0; rep < 4; ++rep) {
      const ComplexMatrix m = random_hermitian(n, rng);
      const auto eig = hermitian_eig(m);
      ComplexMatrix lam(n, n);
      for (std::size_t i = 0; i < n; ++i) lam(i, i) = eig.values[i];
      t.see(max_abs_diff(sandwich(eig.vectors, lam), m));
      t.see(max_abs_diff(matmul(adjoint(eig.vectors), eig.vectors),
                         ComplexMatrix::identity(n)));
    }
  }
  return outcome("linalg.eig_reconstruction", t.max(), 1e-10);
}

SuiteOutcome partial_transpose_involution(const VerifyOptions& opt) {
  CounterRng rng(opt.seed, 2000);
  Tracker t;
  for (BipartiteDims dims : {BipartiteDims{2, 2}, BipartiteDims{3, 3}, BipartiteDims{2, 3}}) {
    const ComplexMatrix rho = random_density(dims.total(), rng);
    for (Subsystem s : {Subsystem::A, Subsystem::B}) {
      t.see(max_abs_diff(partial_transpose(partial_transpose(rho, dims, s), dims, s), rho));
      t.see(std::abs(trace(partial_transpose(rho, dims, s)) - trace(rho)));
    }
  }
  // Bell state: negativity 1
  t.see(std::abs(negativity(schmidt_state(0.5), {2, 2}) - 1.0));
  return outcome("linalg.partial_transpose", t.max(), 1e-12);
}

// --- estimation engine ----------------------------------------------------------------

SuiteOutcome sld_equation(const VerifyOptions& opt) {
  CounterRng rng(opt.seed, 3000);
  Tracker t;
  for (std::size_t n : {2u, 4u, 9u}) {
    const ComplexMatrix rho = random_density(n, rng);
    ComplexMatrix drho = random_hermitian(n, rng);
    const cplx tr = trace(drho) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) drho(i, i) -= tr;
    const ComplexMatrix L = sld(rho, drho).L;
    const ComplexMatrix lhs = (matmul(L, rho) + matmul(rho, L)) * cplx{0.5, 0.0};
    t.see(max_abs_diff(lhs, drho) / std::max(1.0, max_abs(drho)));
    const double h1 = qfi_scalar(rho, drho);
    t.see(rel_err(h1, trace_of_product(rho, matmul(L, L)).real()));
  }
  return outcome("qfi.sld_equation", t.max(), 1e-8);
}

std::vector<std::pair<QubitFamily, std::vector<std::vector<double>>>> spot_points() {
  return {
      {QubitFamily::Schmidt, {{0.1}, {0.3}, {0.5}, {0.7}, {0.9}}},
      {QubitFamily::Mixture, {{0.1, 0.2}, {0.3, 0.5}, {0.45, 0.7}, {0.6, 0.3}, {0.8, 0.9}}},
      {QubitFamily::Werner, {{0.2, 0.2}, {0.4, 0.5}, {0.6, 0.7}, {0.8, 0.3}, {0.95, 0.9}}},
      {QubitFamily::Horodecki, {{0.05}, {0.2}, {0.4}, {0.6}, {0.9}}},
  };
}

SuiteOutcome sld_saturation(const VerifyOptions&) {
  Tracker t;
  for (const auto& [fam, points] : spot_points()) {
    const ParamFamily family = make_family(fam);
    for (const auto& point : points) {
      const ComplexMatrix rho = family.state(point);
      for (std::size_t j = 0; j < family.arity(); ++j) {
        const ComplexMatrix drho = state_derivative(family, point, j).value;
        const ComplexMatrix d[] = {drho};
        const double H = qfi_from_derivatives(rho, d).H(0, 0);
        const SldPovm povm = sld_povm(sld(rho, drho).L);
        t.see(rel_err(classical_fisher(rho, drho, povm.projectors), H));
      }
    }
  }
  return outcome("qfi.sld_povm_saturation", t.max(), 1e-7);
}

SuiteOutcome local_unitary_invariance(const VerifyOptions& opt) {
  CounterRng rng(opt.seed, 4000);
  Tracker t;
  for (const auto& [fam, points] : spot_points()) {
    const ParamFamily base = make_family(fam);
    const BipartiteDims dims = dims_of(fam);
    const auto& point = points[2];
    const RealMatrix H0 = qfi_matrix(base, point).H;
    for (int rep = 0; rep < 5; ++rep) {
      const ParamFamily rotated = locally_rotated(base, random_unitary(dims.dim_a, rng),
                                                  random_unitary(dims.dim_b, rng));
      const RealMatrix H1 = qfi_matrix(rotated, point).H;
      t.see(max_abs_diff(H0, H1) / max_abs(H0));
    }
  }
  return outcome("qfi.local_unitary_invariance", t.max(), 1e-7);
}

SuiteOutcome matrix_routes(const VerifyOptions&) {
  Tracker t;
  for (const auto& [fam, points] : spot_points()) {
    const ParamFamily family = make_family(fam);
    for (const auto& point : points) {
      const QfiResult analytic = qfi_matrix(family, point);
      const QfiResult numeric = qfi_matrix(family, point, {.use_analytic = false});
      t.see(analytic.route_gap);
      t.see(numeric.route_gap);
    }
  }
  return outcome("qfi.matrix_routes", t.max(), 1e-6);
}

SuiteOutcome numeric_derivatives(const VerifyOptions&) {
  Tracker t;
  for (const auto& [fam, points] : spot_points()) {
    const ParamFamily family = make_family(fam);
    for (const auto& point : points) {
      const QfiResult analytic = qfi_matrix(family, point);
      const QfiResult numeric = qfi_matrix(family, point, {.use_analytic = false});
      t.see(max_abs_diff(analytic.H, numeric.H) / max_abs(analytic.H));
    }
  }
  return outcome("qfi.numeric_derivative", t.max(), 1e-5);
}

SuiteOutcome chain_rule(const VerifyOptions&) {
  Tracker t;
  // Schmidt: H(eps_N) = H(q) / (d eps/dq)^2 must equal 1 / (1 - eps^2).
  for (double q : grid(0.05, 0.45, 9)) {
    const double eps = schmidt_negativity(q);
    const double slope = (1.0 - 2.0 * q) / std::sqrt(q * (1.0 - q));
    const QfiResult hq = qfi_matrix(schmidt_family(), std::vector<double>{q});
    RealMatrix B(1, 1, {1.0 / slope});
    const QfiResult he = reparametrize(hq, B);
    t.see(rel_err(he.H(0, 0), 1.0 / (1.0 - eps * eps)));
  }
  return outcome("qfi.reparametrization", t.max(), 1e-8);
}

SuiteOutcome budget_examples(const VerifyOptions&) {
  Tracker t;
  const MeasureBound b = qfi_vs_measure(QubitFamily::Schmidt, EntanglementMeasure::Negativity,
                                        0.6, std::nullopt, Branch::None);
  t.see(rel_err(b.var_bound, 0.64));
  t.see(rel_err(b.qsnr, 0.5625));
  const EstimationBudget e = budget(0.6, 1.0 / 0.64, 0.1);
  t.see(rel_err(e.measurements, 9.0 / (0.01 * 0.5625)));
  t.see(std::isinf(measurements_for(0.0, 0.1)) ? 0.0 : 1.0);
  t.see(measurements_for(std::numeric_limits<double>::infinity(), 0.1));
  return outcome("budget.qsnr_measurements", t.max(), 1e-12);
}

// --- qubit families -----------------------------------------------------------------

SuiteOutcome schmidt_qfi(const VerifyOptions&) {
  Tracker t;
  for (double q : grid(0.05, 0.95, 19)) {
    const double h = qfi_matrix(schmidt_family(), std::vector<double>{q}).H(0, 0);
    t.see(rel_err(h, 1.0 / (q * (1.0 - q))));
  }
  return outcome("pure.qfi_schmidt", t.max(), 1e-6);
}

SuiteOutcome schmidt_measure_bounds(const VerifyOptions&) {
  Tracker t;
  for (double q : grid(0.05, 0.95, 19)) {
    if (std::abs(q - 0.5) < 1e-12) continue;
    const double en = schmidt_negativity(q);
    const double el = schmidt_linear_entropy(q);
    const double p[] = {q};
    const MeasureBound bn = bound_at_params(QubitFamily::Schmidt,
                                            EntanglementMeasure::Negativity, p);
    const MeasureBound bl = bound_at_params(QubitFamily::Schmidt,
                                            EntanglementMeasure::LinearEntropy, p);
    t.see(rel_err(bn.var_bound, 1.0 - en * en));
    t.see(rel_err(bl.var_bound, 4.0 * el * (1.0 - el)));
    t.see(rel_err(bn.qsnr, en * en / (1.0 - en * en)));
  }
  return outcome("pure.measure_bounds", t.max(), 1e-6);
}

SuiteOutcome mixture_qfi(const VerifyOptions&) {
  Tracker t;
  for (double p : grid(0.05, 0.95, 10)) {
    for (double q : grid(0.05, 0.95, 10)) {
      if (std::abs(p - 0.5) < 1e-9) continue;
      const RealMatrix H = qfi_matrix(orbit_mixture_family(), std::vector<double>{p, q}).H;
      const double t2 = (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
      t.see(rel_err(H(0, 0), 1.0 / (p * (1.0 - p))));
      t.see(rel_err(H(1, 1), t2 / (q * (1.0 - q))));
      t.see(std::abs(H(0, 1)) / std::sqrt(H(0, 0) * H(1, 1)));
    }
  }
  return outcome("mixture.qfi_matrix", t.max(), 1e-6);
}

SuiteOutcome mixture_reparametrized(const VerifyOptions&) {
  Tracker t;
  for (double eps : {0.1, 0.3, 0.5, 0.7}) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double mu : grid(0.5 + 0.5 * eps * eps + 0.02, 0.99, 6)) {
      const auto pq = mixture_params(mu, eps);
      const QfiResult h = qfi_matrix(orbit_mixture_family(), pq);
      const QfiResult g = reparametrize(h, mixture_transfer(mu, eps));
      const RealMatrix want = closed_form_qfi_inverse(QubitFamily::Mixture,
                                                      Chart::MuNegativity,
                                                      std::vector<double>{mu, eps});
      t.see(max_abs_diff(g.Hinv, want) / max_abs(want));
      t.see(rel_err(g.Hinv(1, 1), 1.0 - eps * eps));
      lo = std::min(lo, g.Hinv(1, 1));
      hi = std::max(hi, g.Hinv(1, 1));
    }
    t.see(hi - lo);
  }
  return outcome("mixture.var_negativity", t.max(), 1e-8);
}

SuiteOutcome werner_qfi(const VerifyOptions& opt) {
  Tracker t;
  const double bump = 1.0 + opt.werner_perturbation;
  for (double p : grid(0.05, 0.95, 10)) {
    for (double q : grid(0.05, 0.95, 10)) {
      const RealMatrix H = qfi_matrix(werner_family(), std::vector<double>{p, q}).H;
      t.see(rel_err(H(0, 0), bump * 3.0 / (1.0 + (2.0 - 3.0 * p) * p)));
      t.see(rel_err(H(1, 1), bump * 2.0 * p * p / (q * (1.0 - q) * (1.0 + p))));
      t.see(std::abs(H(0, 1)) / std::sqrt(H(0, 0) * H(1, 1)));
    }
  }
  return outcome("werner.qfi_matrix", t.max(), 1e-6);
}

SuiteOutcome werner_negativity_check(const VerifyOptions&) {
  Tracker t;
  for (double p : grid(0.05, 0.95, 10)) {
    for (double q : grid(0.05, 0.95, 10)) {
      t.see(std::abs(negativity(werner_state(p, q), {2, 2}) - werner_negativity(p, q)));
      t.see(std::abs(negativity(orbit_mixture(p, q), {2, 2}) - mixture_negativity(p, q)));
    }
    const double q = p;
    t.see(werner_negativity(werner_threshold(q), q));
  }
  return outcome("werner.negativity", t.max(), 1e-10);
}

SuiteOutcome werner_small_eps(const VerifyOptions&) {
  const double eps = 1e-3;
  Tracker t;
  for (double x : grid(0.05, 0.95, 10)) {
    const MeasureBound bq = qfi_vs_measure(QubitFamily::Werner, EntanglementMeasure::Negativity,
                                           eps, Companion{"q", x}, Branch::None);
    t.see(std::abs(bq.qsnr / (eps * eps) - 1.0));
    if (x * (1.0 + 4.0 * 0.5) <= 2.0 * eps + 1.0) continue;  // unreachable at this p
    const MeasureBound bp = qfi_vs_measure(QubitFamily::Werner, EntanglementMeasure::Negativity,
                                           eps, Companion{"p", x}, Branch::None);
    t.see(std::abs(bp.qsnr / (eps * eps) - 1.0));
  }
  return outcome("werner.small_eps_qsnr", t.max(), 0.2);
}

SuiteOutcome horodecki_ppt(const VerifyOptions&) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= 100; ++k) {
    const double a = 0.005 + 0.99 * static_cast<double>(k) / 100.0;
    const auto eig = hermitian_eig(
        partial_transpose(horodecki_state(a), {3, 3}, Subsystem::A));
    worst = std::min(worst, eig.values.front());
  }
  return outcome("horodecki.ppt", std::max(0.0, -worst), 1e-10);
}

SuiteOutcome lur_peak(const VerifyOptions&) {
  Tracker t;
  t.see(std::abs(lur_violation(kLurPeak) - kLurMax));
  t.see(std::abs(lur_violation_slope(kLurPeak)));
  for (double a : grid(0.01, 0.99, 99)) t.see(std::max(0.0, lur_violation(a) - kLurMax));
  for (double eps : {1e-4, 5e-4, 1e-3, 1.5e-3}) {
    for (Branch b : {Branch::Lower, Branch::Upper}) {
      t.see(std::abs(lur_violation(lur_violation_inverse(eps, b)) - eps));
    }
  }
  return outcome("horodecki.lur_peak", t.max(), 1e-12);
}

// --- Gaussian -----------------------------------------------------------------------

SuiteOutcome gaussian_dtilde(const VerifyOptions&) {
  Tracker t;
  for (double a : grid(0.6, 5.0, 12)) {
    const TwoModeCovariance cm = twin_beam(a);
    t.see(rel_err(symplectic_eig_pt(cm).d_minus, dtilde_symmetric(cm)));
    const auto nu = symplectic_spectrum(cm.matrix());
    t.see(std::abs(nu[0] - 0.5) + std::abs(nu[1] - 0.5));
  }
  for (double r : {0.1, 0.5, 1.0}) {
    for (double n : {0.1, 0.5, 2.0}) {
      t.see(rel_err(symplectic_eig_pt(squeezed_thermal(r, n)).d_minus,
                    squeezed_thermal_dtilde(r, n)));
    }
  }
  return outcome("gauss.dtilde", t.max(), 1e-10);
}

SuiteOutcome gaussian_measures(const VerifyOptions&) {
  Tracker t;
  for (GaussianMeasure m : {GaussianMeasure::LogNegativity, GaussianMeasure::LinearEntropy,
                            GaussianMeasure::EpsS, GaussianMeasure::EpsB}) {
    for (double d : grid(0.02, 0.48, 12)) {
      t.see(rel_err(gaussian_measure_inverse(m, gaussian_measure(m, d)), d));
      const double h = 1e-6;
      const double fd = (gaussian_measure(m, d + h) - gaussian_measure(m, d - h)) / (2 * h);
      t.see(rel_err(gaussian_measure_slope(m, d), fd));
    }
  }
  return outcome("gauss.measures", t.max(), 1e-7);
}

SuiteOutcome wick_dtilde(const VerifyOptions&) {
  Tracker t;
  for (double d : grid(0.01, 0.49, 50)) {
    t.see(rel_err(wick_qfi(twin_beam_from_dtilde(d), twin_beam_dsigma(d)), 1.0 / (d * d)));
  }
  return outcome("gauss.wick_pure_qfi", t.max(), 1e-8);
}

SuiteOutcome wick_negativity(const VerifyOptions&) {
  Tracker t;
  for (double e : grid(0.05, 3.0, 20)) {
    t.see(std::abs(wick_qfi_pure(e, GaussianMeasure::LogNegativity) - 1.0));
  }
  return outcome("gauss.negativity_qfi_unit", t.max(), 1e-8);
}

SuiteOutcome fock_vs_wick(const VerifyOptions&) {
  Tracker t;
  for (GaussianMeasure m : {GaussianMeasure::LogNegativity, GaussianMeasure::LinearEntropy}) {
    for (double e : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const FockTwinBeam f = fock_twin_beam(e, m, fock_cutoff(e, m));
      t.see(rel_err(f.qfi, wick_qfi_pure(e, m)));
    }
  }
  return outcome("gauss.fock_vs_wick", t.max(), 1e-6);
}

SuiteOutcome twin_beam_linear_entropy(const VerifyOptions&) {
  Tracker t;
  for (double e : grid(0.05, 0.95, 19)) {
    const double want = 1.0 / ((2.0 - e) * (1.0 - e) * (1.0 - e) * e);
    t.see(rel_err(wick_qfi_pure(e, GaussianMeasure::LinearEntropy), want));
  }
  return outcome("gauss.twin_beam_linear_entropy", t.max(), 1e-8);
}

SuiteOutcome sts_matrix(const VerifyOptions&) {
  Tracker t;
  for (double r : {0.1, 0.5, 1.0}) {
    for (double n : {0.1, 0.5, 1.0}) {
      const RealMatrix fock = sts_fock_qfi(r, n).H;
      const double h00 = 8.0 - 4.0 / (1.0 + 2.0 * n * (1.0 + n));
      const double h11 = 2.0 / (n * (1.0 + n));
      t.see(rel_err(fock(0, 0), h00));
      t.see(rel_err(fock(1, 1), h11));
      t.see(std::abs(fock(0, 1)) / std::sqrt(h00 * h11));
      const RealMatrix closed = sts_qfi_matrix(r, n).H;
      t.see(rel_err(closed(0, 0), h00) + rel_err(closed(1, 1), h11));
    }
  }
  return outcome("sts.qfi_matrix", t.max(), 1e-4);
}

SuiteOutcome sts_dtilde_bound(const VerifyOptions&) {
  Tracker t;
  for (double d : {0.05, 0.15, 0.3, 0.45}) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double mu : {0.2, 0.4, 0.6, 0.8, 0.95}) {
      if (2.0 * d * mu >= 1.0) continue;
      const StsBound b = sts_bounds(GaussianMeasure::Dtilde, d, mu);
      t.see(rel_err(b.inverse(0, 0), d * d));
      lo = std::min(lo, b.inverse(0, 0));
      hi = std::max(hi, b.inverse(0, 0));
    }
    t.see((hi - lo) / (d * d));
  }
  return outcome("sts.var_dtilde", t.max(), 1e-8);
}

SuiteOutcome sts_measure_bounds(const VerifyOptions&) {
  Tracker t;
  for (double e : grid(0.05, 0.9, 12)) {
    for (double mu : {0.5, 0.9}) {
      const StsBound s = sts_bounds(GaussianMeasure::EpsS, e, mu);
      t.see(rel_err(s.var_bound, (1.0 - e) * (1.0 - e)));
      const StsBound b = sts_bounds(GaussianMeasure::EpsB, e, mu);
      t.see(rel_err(b.var_bound, e * (2.0 - e) * (1.0 - e) * (1.0 - e) / 4.0));
    }
  }
  return outcome("sts.var_measures", t.max(), 1e-8);
}

SuiteOutcome sts_eps_b_peak(const VerifyOptions&) {
  const double peak = 1.0 - 1.0 / std::sqrt(2.0);
  Tracker t;
  t.see(std::abs(sts_bounds(GaussianMeasure::EpsB, peak, 0.7).var_bound - 1.0 / 16.0));
  for (double e : grid(0.02, 0.98, 49)) {
    t.see(std::max(0.0, sts_bounds(GaussianMeasure::EpsB, e, 0.7).var_bound - 1.0 / 16.0));
  }
  return outcome("sts.eps_b_peak", t.max(), 1e-10);
}

// --- Monte Carlo --------------------------------------------------------------------

SuiteOutcome saturation_mc(const VerifyOptions& opt) {
  Tracker t;
  const double point[] = {0.5};
  for (std::uint64_t s = 0; s < 5; ++s) {
    const SimulationResult r = simulate_crb(schmidt_family(), point, 0, 100000,
                                            opt.seed + s);
    t.see(std::abs(r.ratio - 1.0));
  }
  return outcome("simulate.saturation", t.max(), 0.05);
}

const std::vector<std::pair<std::string, Suite>>& catalogue() {
  static const std::vector<std::pair<std::string, Suite>> suites = {
      {"linalg.eig_reconstruction", eig_reconstruction},
      {"linalg.partial_transpose", partial_transpose_involution},
      {"qfi.sld_equation", sld_equation},
      {"qfi.matrix_routes", matrix_routes},
      {"qfi.numeric_derivative", numeric_derivatives},
      {"qfi.sld_povm_saturation", sld_saturation},
      {"qfi.local_unitary_invariance", local_unitary_invariance},
      {"qfi.reparametrization", chain_rule},
      {"budget.qsnr_measurements", budget_examples},
      {"pure.qfi_schmidt", schmidt_qfi},
      {"pure.measure_bounds", schmidt_measure_bounds},
      {"mixture.qfi_matrix", mixture_qfi},
      {"mixture.var_negativity", mixture_reparametrized},
      {"werner.qfi_matrix", werner_qfi},
      {"werner.negativity", werner_negativity_check},
      {"werner.small_eps_qsnr", werner_small_eps},
      {"horodecki.ppt", horodecki_ppt},
      {"horodecki.lur_peak", lur_peak},
      {"gauss.dtilde", gaussian_dtilde},
      {"gauss.measures", gaussian_measures},
      {"gauss.wick_pure_qfi", wick_dtilde},
      {"gauss.negativity_qfi_unit", wick_negativity},
      {"gauss.fock_vs_wick", fock_vs_wick},
      {"gauss.twin_beam_linear_entropy", twin_beam_linear_entropy},
      {"sts.qfi_matrix", sts_matrix},
      {"sts.var_dtilde", sts_dtilde_bound},
      {"sts.var_measures", sts_measure_bounds},
      {"sts.eps_b_peak", sts_eps_b_peak},
      {"simulate.saturation", saturation_mc},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& verification_manifest() {
  static const std::vector<std::string> ids = {
      "linalg.eig_reconstruction",    "linalg.partial_transpose",
      "qfi.sld_equation",             "qfi.matrix_routes",
      "qfi.numeric_derivative",
      "qfi.sld_povm_saturation",      "qfi.local_unitary_invariance",
      "qfi.reparametrization",        "budget.qsnr_measurements",
      "pure.qfi_schmidt",             "pure.measure_bounds",
      "mixture.qfi_matrix",           "mixture.var_negativity",
      "werner.qfi_matrix",            "werner.negativity",
      "werner.small_eps_qsnr",        "horodecki.ppt",
      "horodecki.lur_peak",           "gauss.dtilde",
      "gauss.measures",               "gauss.wick_pure_qfi",
      "gauss.negativity_qfi_unit",    "gauss.fock_vs_wick",
      "gauss.twin_beam_linear_entropy", "sts.qfi_matrix",
      "sts.var_dtilde",               "sts.var_measures",
      "sts.eps_b_peak",               "simulate.saturation",
  };
  return ids;
}

std::vector<SuiteOutcome> run_verification(const VerifyOptions& options) {
  std::vector<SuiteOutcome> results;
  std::set<std::string> covered;
  for (const auto& [id, suite] : catalogue()) {
    SuiteOutcome r;
    try {
      r = suite(options);
    } catch (const std::exception& e) {
      r = SuiteOutcome{id, std::numeric_limits<double>::infinity(), 0.0, false,
                       std::string("exception: ") + e.what()};
    }
    r.id = id;
    covered.insert(id);
    results.push_back(std::move(r));
  }
  std::size_t missing = 0;
  std::string names;
  for (const auto& id : verification_manifest()) {
    if (!covered.count(id)) {
      ++missing;
      names += (names.empty() ? "" : " ") + id;
    }
  }
  results.push_back({"manifest.coverage", static_cast<double>(missing), 0.0,
                     missing == 0, names});
  return results;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const auto results = run_verification(options);
  std::size_t failed = 0;
  char line[256];
  std::snprintf(line, sizeof line, "%-34s %-6s %12s %12s\n", "suite", "result",
                "max_error", "tolerance");
  out << line;
  for (const auto& r : results) {
    if (!r.passed) ++failed;
    std::snprintf(line, sizeof line, "%-34s %-6s %12.3e %12.3e", r.id.c_str(),
                  r.passed ? "PASS" : "FAIL", r.max_error, r.tolerance);
    out << line;
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
  }
  out << (results.size() - failed) << '/' << results.size() << " suites passed\n";
  return failed == 0 ? kExitOk : kExitVerification;
}

}  // namespace entest
