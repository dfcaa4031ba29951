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

#include "entest/estimation.hpp"

#include <limits>
#include <sstream>

#include "entest/kernels.hpp"

namespace entest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> to_vec(std::span<const double> s) {
  return {s.begin(), s.end()};
}

void check_index(const ParamFamily& family, std::size_t j) {
  if (j >= family.arity()) {
    std::ostringstream msg;
    msg << family.name << ": parameter index " << j << " out of range";
    throw DomainError("index", msg.str());
  }
}

ComplexMatrix central(const ParamFamily& f, std::vector<double> x,
                      std::size_t j, double h) {
  const double x0 = x[j];
  x[j] = x0 + h;
  ComplexMatrix plus = f.state(x);
  x[j] = x0 - h;
  ComplexMatrix minus = f.state(x);
  return (plus - minus) * cplx{0.5 / h, 0.0};
}

}  // namespace

void ParamFamily::check_point(std::span<const double> point) const {
  if (point.size() != arity()) {
    std::ostringstream msg;
    msg << name << ": expected " << arity() << " parameters, got "
        << point.size();
    throw DomainError("arity", msg.str());
  }
  for (std::size_t i = 0; i < arity(); ++i) {
    if (!domain[i].contains(point[i])) {
      std::ostringstream msg;
      msg << name << ": parameter " << parameters[i] << " = " << point[i]
          << " outside (" << domain[i].lo << ", " << domain[i].hi << ")";
      throw DomainError(parameters[i], msg.str());
    }
  }
}

double fd_step(double value) noexcept {
  return std::max(1e-5, 1e-5 * std::abs(value));
}

StateDerivative state_derivative(const ParamFamily& family,
                                 std::span<const double> point, std::size_t j,
                                 const DerivativeOptions& options) {
  family.check_point(point);
  check_index(family, j);
  StateDerivative out;
  if (options.use_analytic && family.has_analytic_derivative()) {
    out.value = family.derivative(point, j);
    out.analytic = true;
    return out;
  }
  const Interval dom = family.domain[j];
  const double x0 = point[j];
  const double h = fd_step(x0);
  std::vector<double> x = to_vec(point);

  if (x0 - h > dom.lo && x0 + h < dom.hi) {
    ComplexMatrix d = central(family, x, j, h);
    if (options.richardson && x0 - h > dom.lo && x0 + h < dom.hi) {
      ComplexMatrix half = central(family, x, j, 0.5 * h);
      d = (half * cplx{4.0, 0.0} - d) * cplx{1.0 / 3.0, 0.0};
    }
    out.value = std::move(d);
    return out;
  }

  // Second-order one-sided stencil pointing into the domain.
  const double dir = (x0 + 2.0 * h < dom.hi) ? 1.0 : -1.0;
  if (!dom.contains(x0 + 2.0 * dir * h)) {
    throw DomainError(family.parameters[j],
                      "no room for a finite-difference stencil at " +
                          family.parameters[j]);
  }
  const ComplexMatrix f0 = family.state(x);
  x[j] = x0 + dir * h;
  const ComplexMatrix f1 = family.state(x);
  x[j] = x0 + 2.0 * dir * h;
  const ComplexMatrix f2 = family.state(x);
  out.value = (f1 * cplx{4.0, 0.0} - f0 * cplx{3.0, 0.0} - f2) *
              cplx{dir / (2.0 * h), 0.0};
  out.one_sided = true;
  return out;
}

namespace {

struct Workspace {
  SpectralDecomposition<cplx> eig;
  std::vector<ComplexMatrix> rotated;  // V^dagger dRho_i V
  std::vector<double> weights;         // 2 / (p_n + p_m), or 0 on the kernel
  std::size_t dropped = 0;
};

void check_derivative(const ComplexMatrix& rho, const ComplexMatrix& d) {
  if (!d.square() || d.rows() != rho.rows()) {
    throw LinalgError("state derivative shape does not match the state");
  }
  const double tol = 5e-9 * std::max(1.0, max_abs(d));
  const double asym = hermitian_asymmetry(d);
  if (asym > tol) {
    std::ostringstream msg;
    msg << "state derivative is not Hermitian (max asymmetry " << asym << ")";
    throw LinalgError(msg.str());
  }
}

Workspace prepare(const ComplexMatrix& rho,
                  std::span<const ComplexMatrix> derivatives,
                  const QfiOptions& options) {
  if (options.require_density) {
    validate_density(rho);
  } else if (hermitian_asymmetry(rho) > 1e-10) {
    throw LinalgError("state block is not Hermitian");
  }
  Workspace ws;
  ws.eig = hermitian_eig(rho, 1e-10);
  const std::size_t n = rho.rows();
  const ComplexMatrix vdag = adjoint(ws.eig.vectors);
  ws.rotated.reserve(derivatives.size());
  for (const auto& d : derivatives) {
    check_derivative(rho, d);
    ws.rotated.push_back(matmul(matmul(vdag, d), ws.eig.vectors));
  }
  ws.weights.assign(n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double s = ws.eig.values[a] + ws.eig.values[b];
      if (s < options.cutoff) {
        ++ws.dropped;
      } else {
        ws.weights[a * n + b] = 2.0 / s;
      }
    }
  return ws;
}

ComplexMatrix sld_from(const Workspace& ws, std::size_t i) {
  const std::size_t n = ws.eig.values.size();
  ComplexMatrix inner(n, n);
  for (std::size_t k = 0; k < n * n; ++k)
    inner.flat()[k] = ws.rotated[i].flat()[k] * ws.weights[k];
  ComplexMatrix L = sandwich(ws.eig.vectors, inner);
  return (L + adjoint(L)) * cplx{0.5, 0.0};
}

}  // namespace

SldResult sld(const ComplexMatrix& rho, const ComplexMatrix& drho,
              double cutoff) {
  const ComplexMatrix derivs[] = {drho};
  const Workspace ws = prepare(rho, derivs, {cutoff, true});
  return {sld_from(ws, 0), ws.dropped};
}

RealMatrix qfi_kernel(const ComplexMatrix& rho,
                      std::span<const ComplexMatrix> derivatives,
                      const QfiOptions& options, std::size_t* dropped,
                      double* route_gap) {
  const Workspace ws = prepare(rho, derivatives, options);
  const std::size_t k = derivatives.size();
  const std::size_t nn = rho.size();
  const auto& kern = kernels::active();

  RealMatrix eigen_sum(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kern.weighted_re_dot(nn, ws.weights.data(),
                                            ws.rotated[i].data(),
                                            ws.rotated[j].data());
      eigen_sum(i, j) = v;
      eigen_sum(j, i) = v;
    }

  std::vector<ComplexMatrix> slds;
  slds.reserve(k);
  for (std::size_t i = 0; i < k; ++i) slds.push_back(sld_from(ws, i));
  double gap = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double trace_route =
          trace_of_product(rho, matmul(slds[i], slds[j])).real();
      const double scale = std::max(
          {std::abs(eigen_sum(i, j)), std::abs(eigen_sum(i, i)),
           std::abs(eigen_sum(j, j)), 1e-300});
      gap = std::max(gap, std::abs(trace_route - eigen_sum(i, j)) / scale);
    }
  if (dropped) *dropped += ws.dropped;
  if (route_gap) *route_gap = std::max(*route_gap, gap);
  return eigen_sum;
}

QfiResult finalize_qfi(RealMatrix H) {
  if (!H.square()) throw LinalgError("QFI matrix must be square");
  const std::size_t n = H.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double m = 0.5 * (H(i, j) + H(j, i));
      H(i, j) = m;
      H(j, i) = m;
    }
  QfiResult out;
  std::size_t dropped = 0;
  out.Hinv = symmetric_pinv(H, kPinvThreshold, &dropped);
  out.singular = dropped > 0;
  out.var_bounds.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.var_bounds[i] = out.Hinv(i, i);
  out.H = std::move(H);
  return out;
}

QfiResult qfi_from_derivatives(const ComplexMatrix& rho,
                               std::span<const ComplexMatrix> derivatives,
                               const QfiOptions& options) {
  std::size_t dropped = 0;
  double gap = 0.0;
  RealMatrix H = qfi_kernel(rho, derivatives, options, &dropped, &gap);
  QfiResult out = finalize_qfi(std::move(H));
  out.dropped = dropped;
  out.route_gap = gap;
  return out;
}

double qfi_scalar(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  const ComplexMatrix derivs[] = {drho};
  return qfi_from_derivatives(rho, derivs).H(0, 0);
}

QfiResult qfi_matrix(const ParamFamily& family, std::span<const double> point,
                     const DerivativeOptions& options) {
  family.check_point(point);
  const ComplexMatrix rho = family.state(point);
  auto collect = [&](const DerivativeOptions& opts, bool& one_sided) {
    std::vector<ComplexMatrix> derivs;
    for (std::size_t j = 0; j < family.arity(); ++j) {
      StateDerivative d = state_derivative(family, point, j, opts);
      one_sided = one_sided || d.one_sided;
      derivs.push_back(std::move(d.value));
    }
    return derivs;
  };
  bool one_sided = false;
  auto derivs = collect(options, one_sided);
  QfiResult out = qfi_from_derivatives(rho, derivs);
  const bool numeric = !(options.use_analytic && family.has_analytic_derivative());
  if (numeric && !options.richardson && out.route_gap > 1e-6) {
    DerivativeOptions refined = options;
    refined.richardson = true;
    bool refined_one_sided = false;
    auto better = collect(refined, refined_one_sided);
    QfiResult retry = qfi_from_derivatives(rho, better);
    if (retry.route_gap < out.route_gap) {
      out = std::move(retry);
      one_sided = refined_one_sided;
    }
  }
  out.one_sided = one_sided;
  return out;
}

double pure_state_qfi(std::span<const cplx> psi, std::span<const cplx> dpsi) {
  if (psi.size() != dpsi.size()) {
    throw LinalgError("pure_state_qfi: vector sizes differ");
  }
  double norm2 = 0.0;
  double dd = 0.0;
  cplx overlap{};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    norm2 += std::norm(psi[i]);
    dd += std::norm(dpsi[i]);
    overlap += std::conj(psi[i]) * dpsi[i];
  }
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw LinalgError("pure_state_qfi: state vector is not normalized");
  }
  return 4.0 * (dd - std::norm(overlap));
}

QfiResult reparametrize(const QfiResult& qfi, const RealMatrix& transfer) {
  const std::size_t n = qfi.H.rows();
  if (!transfer.square() || transfer.rows() != n) {
    std::ostringstream msg;
    msg << "reparametrize: transfer matrix is " << transfer.rows() << "x"
        << transfer.cols() << " but the QFI matrix is " << n << "x" << n;
    throw LinalgError(msg.str());
  }
  RealMatrix bt(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bt(i, j) = transfer(j, i);
  QfiResult out = finalize_qfi(matmul(matmul(transfer, qfi.H), bt));
  out.dropped = qfi.dropped;
  out.route_gap = qfi.route_gap;
  out.one_sided = qfi.one_sided;
  return out;
}

void validate_povm(std::span<const ComplexMatrix> povm, double tol) {
  if (povm.empty()) throw LinalgError("POVM has no effects");
  const std::size_t n = povm.front().rows();
  ComplexMatrix total(n, n);
  for (std::size_t k = 0; k < povm.size(); ++k) {
    const auto& e = povm[k];
    if (!e.square() || e.rows() != n) {
      throw LinalgError("POVM effects have inconsistent shapes");
    }
    const auto eig = hermitian_eig(e, tol);
    if (eig.values.front() < -tol) {
      std::ostringstream msg;
      msg << "POVM effect " << k << " is not positive (eigenvalue "
          << eig.values.front() << ")";
      throw LinalgError(msg.str());
    }
    total += e;
  }
  const double defect = max_abs_diff(total, ComplexMatrix::identity(n));
  if (defect > tol) {
    std::ostringstream msg;
    msg << "POVM effects do not sum to the identity (max deviation " << defect
        << ")";
    throw LinalgError(msg.str());
  }
}

double classical_fisher(const ComplexMatrix& rho, const ComplexMatrix& drho,
                        std::span<const ComplexMatrix> povm) {
  validate_povm(povm);
  if (povm.front().rows() != rho.rows()) {
    throw LinalgError("POVM dimension does not match the state");
  }
  double fisher = 0.0;
  for (const auto& e : povm) {
    const double p = trace_of_product(e, rho).real();
    if (p < 1e-14) continue;
    const double dp = trace_of_product(e, drho).real();
    fisher += dp * dp / p;
  }
  return fisher;
}

double classical_fisher(const ParamFamily& family,
                        std::span<const double> point, std::size_t j,
                        std::span<const ComplexMatrix> povm) {
  const ComplexMatrix rho = family.state(point);
  return classical_fisher(rho, state_derivative(family, point, j).value, povm);
}

SldPovm sld_povm(const ComplexMatrix& L, double degeneracy_tol) {
  const auto eig = hermitian_eig(L, 1e-9 * std::max(1.0, max_abs(L)));
  const std::size_t n = L.rows();
  const double scale = std::max(1.0, std::max(std::abs(eig.values.front()),
                                              std::abs(eig.values.back())));
  SldPovm out;
  std::size_t k = 0;
  while (k < n) {
    std::size_t end = k + 1;
    while (end < n &&
           eig.values[end] - eig.values[k] <= degeneracy_tol * scale) {
      ++end;
    }
    ComplexMatrix proj(n, n);
    double mean = 0.0;
    for (std::size_t c = k; c < end; ++c) {
      mean += eig.values[c];
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s)
          proj(r, s) += eig.vectors(r, c) * std::conj(eig.vectors(s, c));
    }
    out.projectors.push_back(std::move(proj));
    out.values.push_back(mean / static_cast<double>(end - k));
    k = end;
  }
  return out;
}

double measurements_for(double qsnr, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta", "delta must be positive");
  if (std::isnan(qsnr)) return qsnr;
  if (qsnr <= 0.0) return kInf;
  if (std::isinf(qsnr)) return 0.0;
  return 9.0 / (delta * delta * qsnr);
}

EstimationBudget budget(double value, double qfi, double delta) {
  if (qfi < 0.0 || std::isnan(qfi)) {
    throw DomainError("H", "quantum Fisher information must be non-negative");
  }
  EstimationBudget b;
  b.value = value;
  b.qfi = qfi;
  b.delta = delta;
  if (value == 0.0 || qfi == 0.0) {
    b.qsnr = 0.0;
  } else {
    b.qsnr = value * value * qfi;
  }
  b.measurements = measurements_for(b.qsnr, delta);
  return b;
}

double counter_uniform(std::uint64_t seed, std::uint64_t index) noexcept {
  // splitmix64 finalizer over a Weyl sequence keyed by the seed
  std::uint64_t z = seed * 0xD1B54A32D192ED03ULL +
                    (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

SimulationResult simulate_crb(const ParamFamily& family,
                              std::span<const double> point, std::size_t j,
                              std::size_t shots, std::uint64_t seed) {
  if (shots < 100) {
    throw DomainError("M", "simulation needs at least 100 shots");
  }
  family.check_point(point);
  check_index(family, j);
  const ComplexMatrix rho = family.state(point);
  const ComplexMatrix drho = state_derivative(family, point, j).value;
  const ComplexMatrix derivs[] = {drho};
  const double H = qfi_from_derivatives(rho, derivs).H(0, 0);
  if (!(H > 0.0)) {
    throw DomainError(family.parameters[j],
                      "quantum Fisher information vanishes at this point");
  }
  const SldPovm povm = sld_povm(sld(rho, drho).L);

  std::vector<double> cumulative;
  double acc = 0.0;
  for (const auto& proj : povm.projectors) {
    acc += std::max(0.0, trace_of_product(proj, rho).real());
    cumulative.push_back(acc);
  }

  const double value = point[j];
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = counter_uniform(seed, s) * acc;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t k = std::min<std::size_t>(
        static_cast<std::size_t>(it - cumulative.begin()),
        cumulative.size() - 1);
    const double estimate = value + povm.values[k] / H;
    const double delta = estimate - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (estimate - mean);
  }
  const double m = static_cast<double>(shots);
  SimulationResult out;
  out.shots = shots;
  out.mean = mean;
  out.bias = mean - value;
  out.empirical_var = m2 / (m - 1.0) / m;
  out.crb = 1.0 / (m * H);
  out.ratio = out.empirical_var / out.crb;
  return out;
}

}  // namespace entest
