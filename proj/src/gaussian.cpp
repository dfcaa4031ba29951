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

#include "entest/gaussian.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace entest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPhysTol = 1e-12;

RealMatrix standard_form(double a, double b, double cp, double cm) {
  return RealMatrix(4, 4, {a, 0.0, cp, 0.0,  //
                           0.0, a, 0.0, cm,  //
                           cp, 0.0, b, 0.0,  //
                           0.0, cm, 0.0, b});
}

void require_positive(const char* name, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << name << " = " << x << " must be positive";
    throw DomainError(name, msg.str());
  }
}

RealMatrix sqrt_psd(const RealMatrix& m) {
  const auto spec = symmetric_eig(m, 1e-10 * std::max(1.0, max_abs(m)));
  const std::size_t n = m.rows();
  RealMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (spec.values[k] <= 0.0) {
      throw LinalgError("covariance matrix is not positive definite");
    }
    const double s = std::sqrt(spec.values[k]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += spec.vectors(i, k) * s * spec.vectors(j, k);
  }
  return out;
}

double cm_det(const TwoModeCovariance& cm) {
  return (cm.a * cm.b - cm.c_plus * cm.c_plus) *
         (cm.a * cm.b - cm.c_minus * cm.c_minus);
}

}  // namespace

RealMatrix TwoModeCovariance::matrix() const {
  return standard_form(a, b, c_plus, c_minus);
}

RealMatrix symplectic_form() {
  return RealMatrix(4, 4, {0.0, 1.0, 0.0, 0.0,   //
                           -1.0, 0.0, 0.0, 0.0,  //
                           0.0, 0.0, 0.0, 1.0,   //
                           0.0, 0.0, -1.0, 0.0});
}

std::array<double, 2> symplectic_spectrum(const RealMatrix& sigma) {
  if (sigma.rows() != 4 || sigma.cols() != 4) {
    throw LinalgError("symplectic_spectrum: expected a 4x4 matrix");
  }
  const RealMatrix s = sqrt_psd(sigma);
  const ComplexMatrix m =
      to_complex(matmul(matmul(s, symplectic_form()), s)) * cplx{0.0, 1.0};
  const auto spec = hermitian_eig(m, 1e-10 * std::max(1.0, max_abs(m)));
  // eigenvalues come in +-nu pairs; the positive half is the spectrum
  std::array<double, 2> nu{std::abs(spec.values[0]), std::abs(spec.values[1])};
  if (nu[0] > nu[1]) std::swap(nu[0], nu[1]);
  return nu;
}

void validate_physical(const TwoModeCovariance& cm) {
  if (!(cm.a >= 0.5 - kPhysTol) || !(cm.b >= 0.5 - kPhysTol)) {
    std::ostringstream msg;
    msg << "unphysical covariance matrix: local variances a = " << cm.a
        << ", b = " << cm.b << " must be >= 1/2";
    throw LinalgError(msg.str());
  }
  const auto nu = symplectic_spectrum(cm.matrix());
  if (nu[0] < 0.5 - kPhysTol) {
    std::ostringstream msg;
    msg << "unphysical covariance matrix: symplectic eigenvalue " << nu[0]
        << " < 1/2";
    throw LinalgError(msg.str());
  }
}

PartialTransposeSpectrum symplectic_eig_pt(const TwoModeCovariance& cm) {
  validate_physical(cm);
  TwoModeCovariance flipped = cm;
  flipped.c_minus = -cm.c_minus;  // p2 -> -p2
  const auto nu = symplectic_spectrum(flipped.matrix());
  return {nu[0], nu[1], nu[0] >= 0.5 - kPhysTol};
}

double dtilde_symmetric(const TwoModeCovariance& cm) {
  if (std::abs(cm.a - cm.b) > 1e-12 * std::max(1.0, cm.a)) {
    throw DomainError("b", "closed-form dtilde needs a symmetric state (a = b)");
  }
  validate_physical(cm);
  return std::sqrt((cm.a - cm.c_plus) * (cm.a + cm.c_minus));
}

cplx gaussian_char_fn(const TwoModeCovariance& cm, std::span<const double> g) {
  if (g.size() != 4) throw LinalgError("characteristic function needs 4 components");
  const RealMatrix s = cm.matrix();
  double quad = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) quad += g[i] * s(i, j) * g[j];
  return {std::exp(-0.5 * quad), 0.0};
}

// --- families -----------------------------------------------------------------------

TwoModeCovariance twin_beam(double a) {
  if (!(a >= 0.5)) throw DomainError("a", "twin-beam variance a must be >= 1/2");
  const double c = std::sqrt(a * a - 0.25);
  return {a, a, c, -c};
}

TwoModeCovariance twin_beam_from_dtilde(double d) {
  require_positive("d", d);
  const double a = 0.5 * (d + 0.25 / d);
  const double c = 0.5 * (0.25 / d - d);
  return {a, a, c, -c};
}

RealMatrix twin_beam_dsigma(double d) {
  require_positive("d", d);
  const double da = 0.5 * (1.0 - 0.25 / (d * d));
  const double dc = 0.5 * (-0.25 / (d * d) - 1.0);
  return standard_form(da, da, dc, -dc);
}

TwoModeCovariance squeezed_thermal(double r, double n_thermal) {
  if (!(r >= 0.0)) throw DomainError("r", "squeezing r must be >= 0");
  if (!(n_thermal >= 0.0)) throw DomainError("N", "thermal photons N must be >= 0");
  const double w = n_thermal + 0.5;
  const double a = w * std::cosh(2.0 * r);
  const double c = w * std::sinh(2.0 * r);
  return {a, a, c, -c};
}

RealMatrix squeezed_thermal_dsigma(double r, double n_thermal, std::size_t j) {
  squeezed_thermal(r, n_thermal);
  const double w = n_thermal + 0.5;
  if (j == 0) {
    const double da = 2.0 * w * std::sinh(2.0 * r);
    const double dc = 2.0 * w * std::cosh(2.0 * r);
    return standard_form(da, da, dc, -dc);
  }
  if (j == 1) {
    const double da = std::cosh(2.0 * r);
    const double dc = std::sinh(2.0 * r);
    return standard_form(da, da, dc, -dc);
  }
  throw DomainError("index", "squeezed thermal family has two parameters");
}

double squeezed_thermal_dtilde(double r, double n_thermal) {
  squeezed_thermal(r, n_thermal);
  return 0.5 * std::exp(-2.0 * r) * (1.0 + 2.0 * n_thermal);
}

double squeezed_thermal_purity(double n_thermal) {
  if (!(n_thermal >= 0.0)) throw DomainError("N", "thermal photons N must be >= 0");
  return 1.0 / (2.0 * n_thermal + 1.0);
}

// --- measures -------------------------------------------------------------------------

std::string_view to_string(GaussianMeasure m) noexcept {
  switch (m) {
    case GaussianMeasure::Dtilde: return "dtilde";
    case GaussianMeasure::LogNegativity: return "log_negativity";
    case GaussianMeasure::LinearEntropy: return "linear_entropy";
    case GaussianMeasure::EpsS: return "eps_s";
    case GaussianMeasure::EpsB: return "eps_b";
  }
  return "?";
}

double gaussian_measure(GaussianMeasure m, double d) {
  require_positive("d", d);
  if (m == GaussianMeasure::Dtilde) return d;
  if (d >= 0.5) return 0.0;
  switch (m) {
    case GaussianMeasure::LogNegativity: return -std::log(2.0 * d);
    case GaussianMeasure::LinearEntropy: return 1.0 - 4.0 * d / (1.0 + 4.0 * d * d);
    case GaussianMeasure::EpsS: return 1.0 - 2.0 * d;
    case GaussianMeasure::EpsB: {
      const double s = 1.0 - std::sqrt(2.0 * d);
      return s * s / (1.0 + 2.0 * d);
    }
    case GaussianMeasure::Dtilde: break;
  }
  return d;
}

double gaussian_measure_inverse(GaussianMeasure m, double eps) {
  if (m == GaussianMeasure::Dtilde) {
    require_positive("d", eps);
    return eps;
  }
  const bool unbounded = m == GaussianMeasure::LogNegativity;
  if (!(eps >= 0.0) || (!unbounded && !(eps < 1.0)) || !std::isfinite(eps)) {
    std::ostringstream msg;
    msg << to_string(m) << " value " << eps << " outside "
        << (unbounded ? "[0, inf)" : "[0, 1)");
    throw DomainError("eps", msg.str());
  }
  switch (m) {
    case GaussianMeasure::LogNegativity: return 0.5 * std::exp(-eps);
    case GaussianMeasure::LinearEntropy: {
      const double t = 1.0 - eps;
      return (1.0 - std::sqrt(1.0 - t * t)) / (2.0 * t);
    }
    case GaussianMeasure::EpsS: return 0.5 * (1.0 - eps);
    case GaussianMeasure::EpsB: {
      const double t = 1.0 - eps;
      const double s = (1.0 - std::sqrt(1.0 - t * t)) / t;
      return 0.5 * s * s;
    }
    case GaussianMeasure::Dtilde: break;
  }
  return eps;
}

double gaussian_measure_slope(GaussianMeasure m, double d) {
  require_positive("d", d);
  if (m == GaussianMeasure::Dtilde) return 1.0;
  if (d > 0.5) return 0.0;
  switch (m) {
    case GaussianMeasure::LogNegativity: return -1.0 / d;
    case GaussianMeasure::LinearEntropy: {
      const double u = 1.0 + 4.0 * d * d;
      return -4.0 * (1.0 - 4.0 * d * d) / (u * u);
    }
    case GaussianMeasure::EpsS: return -2.0;
    case GaussianMeasure::EpsB: {
      const double u = 1.0 + 2.0 * d;
      return -2.0 * (1.0 - 2.0 * d) / (std::sqrt(2.0 * d) * u * u);
    }
    case GaussianMeasure::Dtilde: break;
  }
  return 1.0;
}

// --- phase-space QFI ----------------------------------------------------------------------

cplx wick_quartic_moment(const ComplexMatrix& d, const RealMatrix& s1,
                         const RealMatrix& s2) {
  const std::size_t n = d.rows();
  if (!d.square() || s1.rows() != n || s2.rows() != n || !s1.square() ||
      !s2.square()) {
    throw LinalgError("wick_quartic_moment: shape mismatch");
  }
  const ComplexMatrix c = inverse(d);
  const ComplexMatrix a = matmul(to_complex(s1), c);
  const ComplexMatrix b = matmul(to_complex(s2), c);
  const cplx quartic = trace(a) * trace(b) + 2.0 * trace_of_product(a, b);
  return quartic / std::sqrt(determinant(d));
}

RealMatrix wick_phase_matrix() {
  const ComplexMatrix sy = pauli_y();
  const ComplexMatrix u =
      kron(kron(sy, ComplexMatrix::identity(2)), sy) * cplx{0.5, 0.0};
  return real_part(u);
}

double wick_qfi(const TwoModeCovariance& cm, const RealMatrix& dsigma) {
  validate_physical(cm);
  const double det = cm_det(cm);
  if (std::abs(det - 1.0 / 16.0) > 1e-10) {
    std::ostringstream msg;
    msg << "phase-space QFI integral applies to pure states only (det sigma = "
        << det << ", pure states have 1/16)";
    throw DomainError("state", msg.str());
  }
  const RealMatrix s = cm.matrix();
  RealMatrix sigma(8, 8);
  RealMatrix s1(8, 8);
  RealMatrix s2(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      sigma(i, j) = 2.0 * s(i, j);
      sigma(i + 4, j + 4) = 2.0 * s(i, j);
      sigma(i, j + 4) = s(i, j);
      sigma(i + 4, j) = s(i, j);
      s1(i, j) = dsigma(i, j);
      s2(i + 4, j + 4) = dsigma(i, j);
    }
  const ComplexMatrix delta =
      to_complex(sigma) + to_complex(wick_phase_matrix()) * cplx{0.0, 1.0};
  const cplx h = wick_quartic_moment(delta, s1, s2);
  if (std::abs(h.imag()) > 1e-9 * std::max(1.0, std::abs(h.real()))) {
    std::ostringstream msg;
    msg << "phase-space integral left an imaginary residue " << h.imag();
    throw LinalgError(msg.str());
  }
  return h.real();
}

double wick_qfi_pure(double eps, GaussianMeasure m) {
  const double d = gaussian_measure_inverse(m, eps);
  if (!(d < 0.5)) throw DomainError("eps", "twin-beam needs an entangled point");
  const double slope = gaussian_measure_slope(m, d);
  const RealMatrix dsigma = twin_beam_dsigma(d) * (1.0 / slope);
  return wick_qfi(twin_beam_from_dtilde(d), dsigma);
}

std::size_t fock_cutoff(double eps, GaussianMeasure m) {
  double ratio = 0.0;
  if (m == GaussianMeasure::LogNegativity) {
    const double t = std::tanh(0.5 * eps);
    ratio = t * t;
  } else if (m == GaussianMeasure::LinearEntropy) {
    ratio = eps / (2.0 - eps);
  } else {
    throw DomainError("measure", "Fock amplitudes use log_negativity or linear_entropy");
  }
  if (ratio <= 0.0) return 2;
  // tail after index n is ratio^(n+1)
  const double n = std::ceil(std::log(1e-12) / std::log(ratio));
  return 2 * static_cast<std::size_t>(std::max(1.0, n));
}

FockTwinBeam fock_twin_beam(double eps, GaussianMeasure m, std::size_t n_max) {
  if (n_max == 0) throw DomainError("nMax", "Fock cutoff must be positive");
  FockTwinBeam out;
  out.amplitudes.resize(n_max);
  out.derivatives.resize(n_max);
  if (m == GaussianMeasure::LogNegativity) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
      throw DomainError("eps", "log-negativity must be finite and >= 0");
    }
    const double t = std::tanh(0.5 * eps);
    const double c = std::cosh(0.5 * eps);
    const double dt = 0.5 / (c * c);
    const double dinv_c = -0.5 * t / c;
    double tn = 1.0;        // t^n
    double tn_prev = 0.0;   // t^(n-1)
    for (std::size_t n = 0; n < n_max; ++n) {
      out.amplitudes[n] = tn / c;
      out.derivatives[n] = static_cast<double>(n) * tn_prev * dt / c + tn * dinv_c;
      tn_prev = tn;
      tn *= t;
    }
  } else if (m == GaussianMeasure::LinearEntropy) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw DomainError("eps", "linear entropy must lie in (0, 1)");
    }
    const double base = std::log(2.0 * (1.0 - eps) / (2.0 - eps));
    const double step = std::log(eps / (2.0 - eps));
    for (std::size_t n = 0; n < n_max; ++n) {
      const double nn = static_cast<double>(n);
      const double f = std::exp(0.5 * (base + nn * step));
      out.amplitudes[n] = f;
      out.derivatives[n] =
          f * 0.5 * (nn / eps - 1.0 / (1.0 - eps) + (nn + 1.0) / (2.0 - eps));
    }
  } else {
    throw DomainError("measure", "Fock amplitudes use log_negativity or linear_entropy");
  }
  double norm = 0.0;
  double metric = 0.0;
  for (std::size_t n = n_max; n-- > 0;) {
    norm += out.amplitudes[n] * out.amplitudes[n];
    metric += out.derivatives[n] * out.derivatives[n];
  }
  out.deficit = 1.0 - norm;
  if (out.deficit > 1e-12) {
    std::ostringstream msg;
    msg << "Fock cutoff " << n_max << " too small: norm deficit " << out.deficit;
    throw DomainError("nMax", msg.str());
  }
  // real amplitudes: <psi|dpsi> = 0
  out.qfi = 4.0 * metric;
  return out;
}

// --- squeezed thermal states -------------------------------------------------------------

QfiResult sts_qfi_matrix(double r, double n_thermal) {
  require_positive("r", r);
  require_positive("N", n_thermal);
  const double n = n_thermal;
  RealMatrix h(2, 2);
  h(0, 0) = 8.0 - 4.0 / (1.0 + 2.0 * n * (1.0 + n));
  h(1, 1) = 2.0 / (n * (1.0 + n));
  return finalize_qfi(std::move(h));
}

QfiResult sts_fock_qfi(double r, double n_thermal,
                       const FockOracleOptions& options) {
  require_positive("r", r);
  require_positive("N", n_thermal);
  const double n = n_thermal;
  const double x = n / (n + 1.0);
  const std::size_t nth = static_cast<std::size_t>(
      std::ceil(std::log(options.tail) / std::log(x))) + 1;
  std::vector<double> pop(nth);
  std::vector<double> dpop(nth);
  for (std::size_t k = 0; k < nth; ++k) {
    const double kk = static_cast<double>(k);
    pop[k] = std::pow(x, kk) / (n + 1.0);
    dpop[k] = (kk / n - (kk + 1.0) / (n + 1.0)) * pop[k];
  }
  const std::size_t dim =
      options.basis ? options.basis : std::max<std::size_t>(60, nth + 10);

  RealMatrix total(2, 2);
  std::size_t dropped = 0;
  double gap = 0.0;
  QfiOptions qopt;
  qopt.cutoff = 1e-14;
  qopt.require_density = false;

  for (std::size_t shift = 0; shift < nth; ++shift) {
    // Block |m + shift, m>: the squeezing generator is tridiagonal here.
    std::vector<double> off(dim - 1);
    for (std::size_t i = 0; i + 1 < dim; ++i)
      off[i] = std::sqrt(static_cast<double>((i + shift + 1) * (i + 1)));
    RealMatrix gen(dim, dim);
    for (std::size_t i = 0; i + 1 < dim; ++i) {
      gen(i + 1, i) = off[i];
      gen(i, i + 1) = -off[i];
    }
    // i G = P T P^dagger with P = diag(i^k) and T real tridiagonal.
    const auto tri = tridiagonal_eig(std::vector<double>(dim, 0.0), off);
    RealMatrix wc(dim, dim);
    RealMatrix ws(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) {
        wc(i, k) = tri.vectors(i, k) * std::cos(r * tri.values[k]);
        ws(i, k) = tri.vectors(i, k) * std::sin(r * tri.values[k]);
      }
    RealMatrix wt(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) wt(i, k) = tri.vectors(k, i);
    const RealMatrix cmat = matmul(wc, wt);
    const RealMatrix smat = matmul(ws, wt);
    RealMatrix u(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        switch ((i + 4 * dim - j) % 4) {
          case 0: u(i, j) = cmat(i, j); break;
          case 1: u(i, j) = smat(i, j); break;
          case 2: u(i, j) = -cmat(i, j); break;
          default: u(i, j) = -smat(i, j); break;
        }
      }

    std::vector<double> w(dim, 0.0);
    std::vector<double> dw(dim, 0.0);
    double mass = 0.0;
    for (std::size_t i = 0; i + shift < nth && i < dim; ++i) {
      w[i] = pop[i + shift] * pop[i];
      dw[i] = dpop[i + shift] * pop[i] + pop[i + shift] * dpop[i];
      mass += w[i];
    }
    if (mass < 1e-15) continue;

    RealMatrix uw(dim, dim);
    RealMatrix udw(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) {
        uw(i, k) = u(i, k) * w[k];
        udw(i, k) = u(i, k) * dw[k];
      }
    RealMatrix ut(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k) ut(i, k) = u(k, i);
    const RealMatrix rho = matmul(uw, ut);
    const RealMatrix drho_r = matmul(gen, rho) - matmul(rho, gen);
    const RealMatrix drho_n = matmul(udw, ut);

    const ComplexMatrix derivs[] = {to_complex(drho_r), to_complex(drho_n)};
    RealMatrix block =
        qfi_kernel(to_complex(rho), derivs, qopt, &dropped, &gap);
    // the block with shift -k mirrors the one with +k
    total += block * (shift == 0 ? 1.0 : 2.0);
  }
  QfiResult out = finalize_qfi(std::move(total));
  out.dropped = dropped;
  out.route_gap = gap;
  return out;
}

RealMatrix sts_transfer(double d, double mu) {
  require_positive("d", d);
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu", "purity must lie in (0, 1)");
  RealMatrix b(2, 2);
  b(0, 0) = -1.0 / (2.0 * d);
  b(0, 1) = 0.0;
  b(1, 0) = -1.0 / (2.0 * mu);
  b(1, 1) = -(1.0 - mu) / (2.0 * mu * mu) - 1.0 / (2.0 * mu);
  return b;
}

StsBound sts_bounds(GaussianMeasure m, double eps, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu", "purity must lie in (0, 1)");
  const double d = gaussian_measure_inverse(m, eps);
  const double r = -0.5 * std::log(2.0 * d * mu);
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "no squeezed thermal state with dtilde = " << d << " at purity " << mu;
    throw DomainError("eps", msg.str());
  }
  const double n = 0.5 * (1.0 / mu - 1.0);
  const QfiResult natural = sts_qfi_matrix(r, n);
  const QfiResult reparam = reparametrize(natural, sts_transfer(d, mu));

  StsBound out;
  out.measure = m;
  out.value = eps;
  out.dtilde = d;
  out.mu = mu;
  out.inverse = reparam.Hinv;
  const double slope = gaussian_measure_slope(m, d);
  out.var_bound = slope * slope * reparam.Hinv(0, 0);
  if (eps == 0.0) {
    out.qsnr = 0.0;
  } else if (out.var_bound == 0.0) {
    out.qsnr = kInf;
  } else {
    out.qsnr = eps * eps / out.var_bound;
  }
  return out;
}

}  // namespace entest
