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

#include "entest/qubit_families.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace entest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_open_unit(const char* name, double x) {
  if (!(x > 0.0 && x < 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << x << " must lie in (0, 1)";
    throw DomainError(name, msg.str());
  }
}

void require_closed_unit(const char* name, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << x << " must lie in [0, 1]";
    throw DomainError(name, msg.str());
  }
}

double schmidt_root(double q) { return std::sqrt(q * (1.0 - q)); }

ComplexMatrix projector(std::span<const cplx> v) { return outer(v, v); }

ComplexMatrix symmetrized_outer(std::span<const cplx> v,
                                std::span<const cplx> w) {
  return outer(v, w) + outer(w, v);
}

ComplexMatrix xx_generator() { return kron(pauli_x(), pauli_x()); }

std::vector<cplx> schmidt_vector_derivative(double q) {
  return {0.5 / std::sqrt(q), 0.0, 0.0, -0.5 / std::sqrt(1.0 - q)};
}

// Pieces of the qutrit family: rho = N(a) / (1 + 8a).
struct HorodeckiParts {
  ComplexMatrix flat;     // the five weight-a projectors
  ComplexMatrix ghz;      // |E><E|
  std::vector<cplx> pi;   // |Pi>
  std::vector<cplx> dpi;  // d|Pi>/da
};

HorodeckiParts horodecki_parts(double a) {
  HorodeckiParts parts;
  parts.flat = ComplexMatrix(9, 9);
  for (std::size_t k : {1u, 2u, 3u, 5u, 7u}) parts.flat(k, k) = 1.0;
  std::vector<cplx> e(9);
  const double amp = 1.0 / std::sqrt(3.0);
  e[0] = amp;
  e[4] = amp;
  e[8] = amp;
  parts.ghz = projector(e);
  const double up = std::sqrt((1.0 + a) / 2.0);
  const double down = std::sqrt((1.0 - a) / 2.0);
  parts.pi.assign(9, 0.0);
  parts.pi[6] = up;
  parts.pi[8] = down;
  parts.dpi.assign(9, 0.0);
  parts.dpi[6] = 0.25 / up;
  parts.dpi[8] = down > 0.0 ? -0.25 / down : -kInf;
  return parts;
}

std::span<const double> one(const double& x) { return {&x, 1}; }

}  // namespace

std::string_view to_string(QubitFamily f) noexcept {
  switch (f) {
    case QubitFamily::Schmidt: return "schmidt";
    case QubitFamily::Mixture: return "mixture";
    case QubitFamily::Werner: return "werner";
    case QubitFamily::Horodecki: return "horodecki";
  }
  return "?";
}

std::string_view to_string(EntanglementMeasure m) noexcept {
  switch (m) {
    case EntanglementMeasure::Negativity: return "negativity";
    case EntanglementMeasure::LinearEntropy: return "linear_entropy";
    case EntanglementMeasure::LurViolation: return "lur";
  }
  return "?";
}

std::string_view to_string(Branch b) noexcept {
  switch (b) {
    case Branch::None: return "none";
    case Branch::Lower: return "lower";
    case Branch::Upper: return "upper";
  }
  return "?";
}

std::string_view to_string(BoundStatus s) noexcept {
  switch (s) {
    case BoundStatus::Ok: return "ok";
    case BoundStatus::Divergent: return "divergent";
    case BoundStatus::Undefined: return "undefined";
    case BoundStatus::Edge: return "edge";
  }
  return "?";
}

// --- states -------------------------------------------------------------------

std::vector<cplx> schmidt_vector(double q) {
  require_closed_unit("q", q);
  return {std::sqrt(q), 0.0, 0.0, std::sqrt(1.0 - q)};
}

ComplexMatrix schmidt_state(double q) { return projector(schmidt_vector(q)); }

ComplexMatrix orbit_unitary(double q) {
  require_closed_unit("q", q);
  return matrix_exp_involution(xx_generator(), std::acos(std::sqrt(q)));
}

ComplexMatrix orbit_mixture(double p, double q) {
  require_closed_unit("p", p);
  ComplexMatrix nu(4, 4);
  nu(0, 0) = p;
  nu(3, 3) = 1.0 - p;
  return sandwich(orbit_unitary(q), nu);
}

ComplexMatrix werner_state(double p, double q) {
  require_closed_unit("p", p);
  ComplexMatrix rho = ComplexMatrix::identity(4) * cplx{(1.0 - p) / 4.0, 0.0};
  return rho + schmidt_state(q) * cplx{p, 0.0};
}

ComplexMatrix horodecki_state(double a) {
  require_closed_unit("a", a);
  const HorodeckiParts parts = horodecki_parts(a);
  ComplexMatrix num = parts.flat * cplx{a, 0.0} + parts.ghz * cplx{3.0 * a, 0.0} +
                      projector(parts.pi);
  return num * cplx{1.0 / (1.0 + 8.0 * a), 0.0};
}

BipartiteDims dims_of(QubitFamily family) noexcept {
  return family == QubitFamily::Horodecki ? BipartiteDims{3, 3}
                                          : BipartiteDims{2, 2};
}

// --- families -------------------------------------------------------------------

ParamFamily schmidt_family() {
  ParamFamily f;
  f.name = "schmidt";
  f.parameters = {"q"};
  f.domain = {{0.0, 1.0}};
  f.state = [](std::span<const double> x) { return schmidt_state(x[0]); };
  f.derivative = [](std::span<const double> x, std::size_t) {
    return symmetrized_outer(schmidt_vector_derivative(x[0]),
                             schmidt_vector(x[0]));
  };
  return f;
}

ParamFamily orbit_mixture_family() {
  ParamFamily f;
  f.name = "mixture";
  f.parameters = {"p", "q"};
  f.domain = {{0.0, 1.0}, {0.0, 1.0}};
  f.state = [](std::span<const double> x) { return orbit_mixture(x[0], x[1]); };
  f.derivative = [](std::span<const double> x, std::size_t j) {
    const double p = x[0];
    const double q = x[1];
    if (j == 0) {
      ComplexMatrix dnu(4, 4);
      dnu(0, 0) = 1.0;
      dnu(3, 3) = -1.0;
      return sandwich(orbit_unitary(q), dnu);
    }
    const ComplexMatrix g = xx_generator();
    const ComplexMatrix rho = orbit_mixture(p, q);
    const double dtheta = -0.5 / schmidt_root(q);
    return (matmul(g, rho) - matmul(rho, g)) * cplx{0.0, dtheta};
  };
  return f;
}

ParamFamily werner_family() {
  ParamFamily f;
  f.name = "werner";
  f.parameters = {"p", "q"};
  f.domain = {{0.0, 1.0}, {0.0, 1.0}};
  f.state = [](std::span<const double> x) { return werner_state(x[0], x[1]); };
  f.derivative = [](std::span<const double> x, std::size_t j) {
    const double p = x[0];
    const double q = x[1];
    if (j == 0) {
      return schmidt_state(q) - ComplexMatrix::identity(4) * cplx{0.25, 0.0};
    }
    return symmetrized_outer(schmidt_vector_derivative(q), schmidt_vector(q)) *
           cplx{p, 0.0};
  };
  return f;
}

ParamFamily horodecki_family() {
  ParamFamily f;
  f.name = "horodecki";
  f.parameters = {"a"};
  f.domain = {{0.0, 1.0}};
  f.state = [](std::span<const double> x) { return horodecki_state(x[0]); };
  f.derivative = [](std::span<const double> x, std::size_t) {
    const double a = x[0];
    const HorodeckiParts parts = horodecki_parts(a);
    const ComplexMatrix num = parts.flat * cplx{a, 0.0} +
                              parts.ghz * cplx{3.0 * a, 0.0} +
                              projector(parts.pi);
    const ComplexMatrix dnum = parts.flat + parts.ghz * cplx{3.0, 0.0} +
                               symmetrized_outer(parts.dpi, parts.pi);
    const double z = 1.0 + 8.0 * a;
    return dnum * cplx{1.0 / z, 0.0} - num * cplx{8.0 / (z * z), 0.0};
  };
  return f;
}

ParamFamily make_family(QubitFamily family) {
  switch (family) {
    case QubitFamily::Schmidt: return schmidt_family();
    case QubitFamily::Mixture: return orbit_mixture_family();
    case QubitFamily::Werner: return werner_family();
    case QubitFamily::Horodecki: return horodecki_family();
  }
  throw DomainError("family", "unknown family");
}

ParamFamily locally_rotated(const ParamFamily& base, const ComplexMatrix& ua,
                            const ComplexMatrix& ub) {
  const ComplexMatrix w = kron(ua, ub);
  const double defect = max_abs_diff(matmul(w, adjoint(w)),
                                     ComplexMatrix::identity(w.rows()));
  if (defect > 1e-12) {
    throw LinalgError("locally_rotated: local operators are not unitary");
  }
  ParamFamily f = base;
  f.name = base.name + "+local";
  f.state = [w, inner = base.state](std::span<const double> x) {
    return sandwich(w, inner(x));
  };
  if (base.derivative) {
    f.derivative = [w, inner = base.derivative](std::span<const double> x,
                                                std::size_t j) {
      return sandwich(w, inner(x, j));
    };
  }
  return f;
}

// --- measures ---------------------------------------------------------------------

double schmidt_negativity(double q) {
  require_closed_unit("q", q);
  return 2.0 * schmidt_root(q);
}

double schmidt_linear_entropy(double q) {
  require_closed_unit("q", q);
  return 4.0 * q * (1.0 - q);
}

double mixture_negativity(double p, double q) {
  require_closed_unit("p", p);
  require_closed_unit("q", q);
  return 2.0 * schmidt_root(q) * std::abs(1.0 - 2.0 * p);
}

double mixture_purity(double p) {
  require_closed_unit("p", p);
  return 1.0 - 2.0 * p * (1.0 - p);
}

double werner_negativity(double p, double q) {
  require_closed_unit("p", p);
  require_closed_unit("q", q);
  return std::max(0.0, 0.5 * (p * (1.0 + 4.0 * schmidt_root(q)) - 1.0));
}

double werner_purity(double p) {
  require_closed_unit("p", p);
  return (1.0 + 3.0 * p * p) / 4.0;
}

double werner_threshold(double q) {
  require_closed_unit("q", q);
  return 1.0 / (1.0 + 4.0 * schmidt_root(q));
}

double lur_violation(double a) {
  require_closed_unit("a", a);
  const double z = 1.0 + 8.0 * a;
  return 3.0 * a * a * (1.0 - a) / (4.0 * (2.0 + a) * z * z);
}

double lur_violation_slope(double a) {
  require_closed_unit("a", a);
  const double z = 1.0 + 8.0 * a;
  const double num = 3.0 * a * a * (1.0 - a);
  const double dnum = 6.0 * a - 9.0 * a * a;
  const double den = 4.0 * (2.0 + a) * z * z;
  const double dden = 4.0 * z * (33.0 + 24.0 * a);
  return (dnum * den - num * dden) / (den * den);
}

double lur_violation_inverse(double eps, Branch branch) {
  if (!(eps >= 0.0 && eps <= kLurMax)) {
    std::ostringstream msg;
    msg << "LUR violation " << eps << " outside [0, 2/1125]";
    throw DomainError("eps", msg.str());
  }
  if (branch == Branch::None) {
    throw DomainError("branch", "LUR violation needs --branch lower|upper");
  }
  double lo = branch == Branch::Lower ? 0.0 : kLurPeak;
  double hi = branch == Branch::Lower ? kLurPeak : 1.0;
  const bool increasing = branch == Branch::Lower;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool below = lur_violation(mid) < eps;
    if (below == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

void check_pair(QubitFamily family, EntanglementMeasure measure) {
  const bool ok =
      (family == QubitFamily::Schmidt &&
       measure != EntanglementMeasure::LurViolation) ||
      ((family == QubitFamily::Mixture || family == QubitFamily::Werner) &&
       measure == EntanglementMeasure::Negativity) ||
      (family == QubitFamily::Horodecki &&
       measure == EntanglementMeasure::LurViolation);
  if (!ok) {
    std::ostringstream msg;
    msg << "measure " << to_string(measure) << " is not defined for family "
        << to_string(family);
    throw DomainError("measure", msg.str());
  }
}

}  // namespace

double measure_value(QubitFamily family, EntanglementMeasure measure,
                     std::span<const double> params) {
  check_pair(family, measure);
  switch (family) {
    case QubitFamily::Schmidt:
      return measure == EntanglementMeasure::Negativity
                 ? schmidt_negativity(params[0])
                 : schmidt_linear_entropy(params[0]);
    case QubitFamily::Mixture: return mixture_negativity(params[0], params[1]);
    case QubitFamily::Werner: return werner_negativity(params[0], params[1]);
    case QubitFamily::Horodecki: return lur_violation(params[0]);
  }
  return kNaN;
}

std::vector<double> measure_gradient(QubitFamily family,
                                     EntanglementMeasure measure,
                                     std::span<const double> params) {
  check_pair(family, measure);
  switch (family) {
    case QubitFamily::Schmidt: {
      const double q = params[0];
      if (measure == EntanglementMeasure::Negativity) {
        return {(1.0 - 2.0 * q) / schmidt_root(q)};
      }
      return {4.0 * (1.0 - 2.0 * q)};
    }
    case QubitFamily::Mixture: {
      const double p = params[0];
      const double q = params[1];
      const double s = schmidt_root(q);
      const double sign = p < 0.5 ? 1.0 : -1.0;
      return {-4.0 * s * sign, (1.0 - 2.0 * q) * std::abs(1.0 - 2.0 * p) / s};
    }
    case QubitFamily::Werner: {
      const double p = params[0];
      const double q = params[1];
      const double s = schmidt_root(q);
      return {0.5 * (1.0 + 4.0 * s), p * (1.0 - 2.0 * q) / s};
    }
    case QubitFamily::Horodecki: return {lur_violation_slope(params[0])};
  }
  return {};
}

// --- reparametrizations ----------------------------------------------------------

std::vector<double> mixture_params(double mu, double eps) {
  if (!(mu > 0.5 && mu < 1.0)) {
    throw DomainError("mu", "purity must lie in (1/2, 1)");
  }
  const double m = 2.0 * mu - 1.0;
  if (!(eps > 0.0 && eps * eps <= m)) {
    std::ostringstream msg;
    msg << "negativity " << eps << " unreachable at purity " << mu
        << " (needs 0 < eps <= sqrt(2 mu - 1))";
    throw DomainError("eps", msg.str());
  }
  const double p = 0.5 * (1.0 - std::sqrt(m));
  const double q = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - eps * eps / m)));
  return {p, q};
}

RealMatrix mixture_transfer(double mu, double eps) {
  const auto pq = mixture_params(mu, eps);
  (void)pq;
  const double m = 2.0 * mu - 1.0;
  const double gap = m - eps * eps;
  if (!(gap > 0.0)) {
    throw DomainError("eps", "transfer matrix is singular at q = 1/2");
  }
  RealMatrix b(2, 2);
  b(0, 0) = -1.0 / (2.0 * std::sqrt(m));
  b(0, 1) = -eps * eps / (2.0 * m * std::sqrt(m * gap));
  b(1, 0) = 0.0;
  b(1, 1) = eps / (2.0 * std::sqrt(m * gap));
  return b;
}

double werner_q_for(double eps, double p) {
  require_open_unit("p", p);
  if (!(eps >= 0.0)) throw DomainError("eps", "negativity must be >= 0");
  const double s = ((2.0 * eps + 1.0) / p - 1.0) / 4.0;
  if (!(s > 0.0 && s <= 0.5)) {
    std::ostringstream msg;
    msg << "negativity " << eps << " unreachable at p = " << p;
    throw DomainError("eps", msg.str());
  }
  return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * s * s)));
}

double werner_p_for(double eps, double q) {
  require_open_unit("q", q);
  if (!(eps >= 0.0)) throw DomainError("eps", "negativity must be >= 0");
  const double p = (2.0 * eps + 1.0) / (1.0 + 4.0 * schmidt_root(q));
  if (!(p < 1.0)) {
    std::ostringstream msg;
    msg << "negativity " << eps << " unreachable at q = " << q;
    throw DomainError("eps", msg.str());
  }
  return p;
}

MeasureBound bound_at_params(QubitFamily family, EntanglementMeasure measure,
                             std::span<const double> params, Branch branch) {
  check_pair(family, measure);
  const ParamFamily fam = make_family(family);
  fam.check_point(params);

  MeasureBound out;
  out.family = family;
  out.measure = measure;
  out.branch = branch;
  out.params.assign(params.begin(), params.end());
  out.value = measure_value(family, measure, params);

  const bool kink =
      (family == QubitFamily::Werner && out.value <= 0.0) ||
      (family == QubitFamily::Mixture && params[0] == 0.5);
  if (kink) {
    out.status = BoundStatus::Undefined;
    out.qfi = kNaN;
    out.var_bound = kNaN;
    out.qsnr = kNaN;
    return out;
  }

  const QfiResult qfi = qfi_matrix(fam, params);
  out.singular = qfi.singular;
  std::vector<double> grad = measure_gradient(family, measure, params);
  const bool flat =
      (family == QubitFamily::Horodecki &&
       std::abs(params[0] - kLurPeak) < 1e-12) ||
      std::all_of(grad.begin(), grad.end(), [](double g) { return g == 0.0; });
  if (flat) {
    out.status = BoundStatus::Divergent;
    out.var_bound = 0.0;
    out.qfi = kInf;
    out.qsnr = kInf;
    return out;
  }
  double var = 0.0;
  for (std::size_t i = 0; i < grad.size(); ++i)
    for (std::size_t j = 0; j < grad.size(); ++j)
      var += grad[i] * qfi.Hinv(i, j) * grad[j];
  out.var_bound = var;
  out.qfi = 1.0 / var;
  out.qsnr = out.value * out.value / var;
  return out;
}

MeasureBound qfi_vs_measure(QubitFamily family, EntanglementMeasure measure,
                            double eps, std::optional<Companion> companion,
                            Branch branch) {
  check_pair(family, measure);
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw DomainError("eps", "measure value must be finite and >= 0");
  }
  auto edge = [&] {
    MeasureBound out;
    out.family = family;
    out.measure = measure;
    out.branch = branch;
    out.value = 0.0;
    out.qfi = kNaN;
    out.var_bound = kNaN;
    out.qsnr = 0.0;
    out.status = BoundStatus::Edge;
    return out;
  };
  auto need = [&](std::initializer_list<std::string_view> names) {
    if (!companion) {
      std::ostringstream msg;
      msg << to_string(family) << " needs a companion parameter";
      throw DomainError("companion", msg.str());
    }
    for (auto n : names)
      if (companion->name == n) return;
    throw DomainError(companion->name, "unsupported companion parameter " +
                                           companion->name + " for " +
                                           std::string(to_string(family)));
  };

  switch (family) {
    case QubitFamily::Schmidt: {
      const bool neg = measure == EntanglementMeasure::Negativity;
      if (eps > 1.0) throw DomainError("eps", "measure value must be <= 1");
      if (eps == 0.0) return edge();
      const double root = neg ? std::sqrt(std::max(0.0, 1.0 - eps * eps))
                              : std::sqrt(std::max(0.0, 1.0 - eps));
      const double q = branch == Branch::Upper ? 0.5 * (1.0 + root)
                                               : 0.5 * (1.0 - root);
      return bound_at_params(family, measure, one(q), branch);
    }
    case QubitFamily::Mixture: {
      need({"mu"});
      if (eps == 0.0) return edge();
      const auto pq = mixture_params(companion->value, eps);
      return bound_at_params(family, measure, pq, branch);
    }
    case QubitFamily::Werner: {
      need({"p", "q"});
      if (eps == 0.0) return edge();
      std::vector<double> pq(2);
      if (companion->name == "q") {
        pq = {werner_p_for(eps, companion->value), companion->value};
      } else {
        pq = {companion->value, werner_q_for(eps, companion->value)};
      }
      return bound_at_params(family, measure, pq, branch);
    }
    case QubitFamily::Horodecki: {
      const double a = lur_violation_inverse(eps, branch);
      if (eps == 0.0) {
        MeasureBound out = edge();
        out.params = {a};
        return out;
      }
      return bound_at_params(family, measure, one(a), branch);
    }
  }
  throw DomainError("family", "unknown family");
}

// --- closed-form catalogue -----------------------------------------------------

RealMatrix closed_form_qfi_inverse(QubitFamily family, Chart chart,
                                   std::span<const double> coords) {
  auto bad = [&]() -> RealMatrix {
    std::ostringstream msg;
    msg << "no closed form for family " << to_string(family)
        << " in the requested parametrization";
    throw DomainError("chart", msg.str());
  };
  auto diag = [](double x, double y) { return RealMatrix(2, 2, {x, 0.0, 0.0, y}); };
  switch (family) {
    case QubitFamily::Schmidt: {
      const double x = coords[0];
      switch (chart) {
        case Chart::Q: require_open_unit("q", x); return RealMatrix(1, 1, {x * (1.0 - x)});
        case Chart::Negativity: require_open_unit("eps", x); return RealMatrix(1, 1, {1.0 - x * x});
        case Chart::LinearEntropy:
          require_open_unit("eps", x);
          return RealMatrix(1, 1, {4.0 * x * (1.0 - x)});
        default: return bad();
      }
    }
    case QubitFamily::Mixture: {
      if (chart == Chart::PQ) {
        const double p = coords[0];
        const double q = coords[1];
        require_open_unit("p", p);
        require_open_unit("q", q);
        const double t = 1.0 - 2.0 * p;
        return diag(p * (1.0 - p), q * (1.0 - q) / (t * t));
      }
      if (chart == Chart::MuNegativity) {
        const double mu = coords[0];
        const double e = coords[1];
        mixture_params(mu, e);
        const double off = 2.0 * e * (1.0 - mu);
        return RealMatrix(2, 2, {-4.0 * mu * mu + 6.0 * mu - 2.0, off, off,
                                 1.0 - e * e});
      }
      return bad();
    }
    case QubitFamily::Werner: {
      if (chart != Chart::PQ) return bad();
      const double p = coords[0];
      const double q = coords[1];
      require_open_unit("p", p);
      require_open_unit("q", q);
      return diag((1.0 + (2.0 - 3.0 * p) * p) / 3.0,
                  q * (1.0 - q) * (1.0 + p) / (2.0 * p * p));
    }
    case QubitFamily::Horodecki: return bad();
  }
  return bad();
}

RealMatrix closed_form_qfi(QubitFamily family, Chart chart,
                           std::span<const double> coords) {
  return inverse(closed_form_qfi_inverse(family, chart, coords));
}

}  // namespace entest
