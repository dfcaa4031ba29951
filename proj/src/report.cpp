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

#include "entest/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "entest/estimation.hpp"
#include "entest/gaussian.hpp"
#include "entest/qubit_families.hpp"

namespace entest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](char c) { return c == '_' || c == '-'; }),
            out.end());
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_plain(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw DomainError(std::string(what),
                      "cannot parse '" + std::string(text) + "' as a number for " +
                          std::string(what));
  }
  return value;
}

// --- family / measure resolution ------------------------------------------------------

enum class FamilyId { Schmidt, Mixture, Werner, Horodecki, TwinBeam, Sts };

FamilyId resolve_family(std::string_view name) {
  const std::string key = lower(name);
  if (key == "schmidt" || key == "pure") return FamilyId::Schmidt;
  if (key == "mixture" || key == "orbitmixture") return FamilyId::Mixture;
  if (key == "werner") return FamilyId::Werner;
  if (key == "horodecki" || key == "bound") return FamilyId::Horodecki;
  if (key == "twinbeam") return FamilyId::TwinBeam;
  if (key == "sts" || key == "squeezedthermal") return FamilyId::Sts;
  throw DomainError("family", "unknown family '" + std::string(name) +
                                  "' (schmidt, mixture, werner, horodecki, "
                                  "twinBeam, sts)");
}

QubitFamily to_qubit(FamilyId f) {
  switch (f) {
    case FamilyId::Schmidt: return QubitFamily::Schmidt;
    case FamilyId::Mixture: return QubitFamily::Mixture;
    case FamilyId::Werner: return QubitFamily::Werner;
    default: return QubitFamily::Horodecki;
  }
}

EntanglementMeasure resolve_qubit_measure(std::string_view name, FamilyId f) {
  const std::string key = lower(name);
  if (key.empty()) {
    return f == FamilyId::Horodecki ? EntanglementMeasure::LurViolation
                                    : EntanglementMeasure::Negativity;
  }
  if (key == "negativity" || key == "epsn") return EntanglementMeasure::Negativity;
  if (key == "linearentropy" || key == "epsl") return EntanglementMeasure::LinearEntropy;
  if (key == "lur" || key == "lurviolation" || key == "epsu") {
    return EntanglementMeasure::LurViolation;
  }
  throw DomainError("measure", "unknown measure '" + std::string(name) + "'");
}

GaussianMeasure resolve_gaussian_measure(std::string_view name) {
  const std::string key = lower(name);
  if (key.empty() || key == "dtilde" || key == "d") return GaussianMeasure::Dtilde;
  if (key == "lognegativity" || key == "negativity" || key == "epsn") {
    return GaussianMeasure::LogNegativity;
  }
  if (key == "linearentropy" || key == "epsl") return GaussianMeasure::LinearEntropy;
  if (key == "epss") return GaussianMeasure::EpsS;
  if (key == "epsb") return GaussianMeasure::EpsB;
  throw DomainError("measure", "unknown Gaussian measure '" + std::string(name) + "'");
}

Branch resolve_branch(std::string_view name) {
  const std::string key = lower(name);
  if (key.empty() || key == "none") return Branch::None;
  if (key == "lower") return Branch::Lower;
  if (key == "upper") return Branch::Upper;
  throw DomainError("branch", "branch must be lower or upper");
}

std::vector<std::string_view> allowed_params(FamilyId f) {
  switch (f) {
    case FamilyId::Schmidt: return {"q", "eps"};
    case FamilyId::Mixture: return {"p", "q", "eps", "mu"};
    case FamilyId::Werner: return {"p", "q", "eps"};
    case FamilyId::Horodecki: return {"a", "eps"};
    case FamilyId::TwinBeam: return {"eps", "d", "a", "r"};
    case FamilyId::Sts: return {"eps", "d", "mu", "r", "N"};
  }
  return {};
}

void check_param_names(const RunConfig& config, FamilyId f) {
  const auto allowed = allowed_params(f);
  for (const auto& [name, value] : config.params) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      std::ostringstream msg;
      msg << "parameter '" << name << "' is not used by family " << config.family;
      throw DomainError(name, msg.str());
    }
  }
}

double require(const RunConfig& config, std::string_view name) {
  if (auto v = config.param(name)) return *v;
  throw DomainError(std::string(name),
                    "missing parameter '" + std::string(name) + "'");
}

void fill_budget(ReportRow& row, const std::vector<double>& deltas) {
  row.measurements.clear();
  for (double d : deltas) {
    row.measurements.push_back(std::isnan(row.qsnr) ? kNaN
                                                     : measurements_for(row.qsnr, d));
  }
}

ReportRow evaluate_qubit(const RunConfig& config, FamilyId fid) {
  const QubitFamily family = to_qubit(fid);
  const EntanglementMeasure measure = resolve_qubit_measure(config.measure, fid);
  Branch branch = resolve_branch(config.branch);
  MeasureBound bound;
  if (auto eps = config.param("eps")) {
    std::optional<Companion> companion;
    for (const char* name : {"mu", "p", "q"}) {
      if (auto v = config.param(name)) {
        if (companion) {
          throw DomainError(name, "give exactly one companion parameter with eps");
        }
        companion = Companion{name, *v};
      }
    }
    if (family == QubitFamily::Schmidt && companion) {
      throw DomainError(companion->name, "schmidt takes eps or q, not both");
    }
    bound = qfi_vs_measure(family, measure, *eps, companion, branch);
  } else {
    std::vector<double> natural;
    for (const auto& name : make_family(family).parameters) {
      natural.push_back(require(config, name));
    }
    if (config.param("mu")) throw DomainError("mu", "mu is used together with eps");
    if (family == QubitFamily::Horodecki && branch == Branch::None) {
      branch = natural[0] < kLurPeak ? Branch::Lower : Branch::Upper;
    }
    bound = bound_at_params(family, measure, natural, branch);
  }
  ReportRow row;
  row.value = bound.value;
  row.qfi = bound.qfi;
  row.var_bound = bound.var_bound;
  row.qsnr = bound.qsnr;
  row.branch = std::string(to_string(bound.branch));
  row.singular = bound.singular;
  row.status = std::string(to_string(bound.status));
  return row;
}

double gaussian_value(const RunConfig& config, GaussianMeasure m) {
  if (auto eps = config.param("eps")) return *eps;
  double d = kNaN;
  if (auto v = config.param("d")) {
    d = *v;
  } else if (auto a = config.param("a")) {
    d = dtilde_symmetric(twin_beam(*a));
  } else if (auto r = config.param("r")) {
    if (!(*r >= 0.0)) throw DomainError("r", "squeezing r must be >= 0");
    d = 0.5 * std::exp(-2.0 * *r);
  } else {
    throw DomainError("eps", "missing parameter 'eps' (or d, a, r)");
  }
  if (!(d > 0.0)) throw DomainError("d", "dtilde must be positive");
  return gaussian_measure(m, d);
}

ReportRow evaluate_twin_beam(const RunConfig& config) {
  const GaussianMeasure m = resolve_gaussian_measure(config.measure);
  ReportRow row;
  row.branch = "none";
  row.value = gaussian_value(config, m);
  const double d = gaussian_measure_inverse(m, row.value);
  if (!(d < 0.5)) {
    row.status = "edge";
    row.qfi = kNaN;
    row.var_bound = kNaN;
    row.qsnr = m == GaussianMeasure::Dtilde ? kNaN : 0.0;
    return row;
  }
  row.qfi = wick_qfi_pure(row.value, m);
  row.var_bound = 1.0 / row.qfi;
  row.qsnr = row.value * row.value * row.qfi;
  row.status = "ok";
  return row;
}

ReportRow evaluate_sts(const RunConfig& config) {
  const GaussianMeasure m = resolve_gaussian_measure(config.measure);
  double mu = kNaN;
  if (auto v = config.param("mu")) {
    mu = *v;
  } else if (auto n = config.param("N")) {
    mu = squeezed_thermal_purity(*n);
  } else {
    throw DomainError("mu", "missing parameter 'mu' (or N)");
  }
  double value = kNaN;
  if (auto eps = config.param("eps")) {
    value = *eps;
  } else if (auto d = config.param("d")) {
    value = gaussian_measure(m, *d);
  } else if (auto r = config.param("r")) {
    if (!(*r > 0.0)) throw DomainError("r", "squeezing r must be positive");
    value = gaussian_measure(m, 0.5 * std::exp(-2.0 * *r) / mu);
  } else {
    throw DomainError("eps", "missing parameter 'eps' (or d, r)");
  }
  const StsBound b = sts_bounds(m, value, mu);
  ReportRow row;
  row.branch = "none";
  row.value = b.value;
  row.var_bound = b.var_bound;
  row.qfi = b.var_bound > 0.0 ? 1.0 / b.var_bound : kInf;
  row.qsnr = b.qsnr;
  if (value == 0.0 && m != GaussianMeasure::Dtilde) {
    row.status = "edge";
  } else if (b.var_bound == 0.0) {
    row.status = "divergent";
  } else {
    row.status = "ok";
  }
  return row;
}

std::string measure_label(const RunConfig& config) {
  const FamilyId fid = resolve_family(config.family);
  if (fid == FamilyId::TwinBeam || fid == FamilyId::Sts) {
    return std::string(to_string(resolve_gaussian_measure(config.measure)));
  }
  return std::string(to_string(resolve_qubit_measure(config.measure, fid)));
}

void write_kv(std::ostream& out, std::string_view key, const std::string& value) {
  out << key << '=' << value << '\n';
}

std::string delta_label(double delta) { return "M_delta_" + format_short(delta); }

void report_error(std::ostream& err, const std::exception& e) {
  err << "error: " << e.what();
  if (const auto* d = dynamic_cast<const DomainError*>(&e)) {
    err << " [parameter: " << d->parameter() << "]";
  }
  err << '\n';
}

}  // namespace

double SweepSpec::at(std::size_t i) const noexcept {
  if (i + 1 == steps) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

void RunConfig::set_param(const std::string& name, double value) {
  for (auto& [n, v] : params) {
    if (n == name) {
      v = value;
      return;
    }
  }
  params.emplace_back(name, value);
}

std::optional<double> RunConfig::param(std::string_view name) const {
  for (const auto& [n, v] : params)
    if (n == name) return v;
  return std::nullopt;
}

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text, what);
  const double num = parse_plain(text.substr(0, slash), what);
  const double den = parse_plain(text.substr(slash + 1), what);
  if (den == 0.0) {
    throw DomainError(std::string(what), "zero denominator in " + std::string(text));
  }
  return num / den;
}

SweepSpec parse_sweep(std::string_view text) {
  const auto parts = split(trim(text), ':');
  if (parts.size() != 4 || trim(parts[0]).empty()) {
    throw DomainError("sweep", "sweep must look like name:lo:hi:steps");
  }
  SweepSpec s;
  s.name = std::string(trim(parts[0]));
  s.lo = parse_number(parts[1], "sweep");
  s.hi = parse_number(parts[2], "sweep");
  const double steps = parse_plain(parts[3], "sweep");
  if (!(steps >= 2.0) || steps != std::floor(steps)) {
    throw DomainError("sweep", "sweep needs an integer number of steps >= 2");
  }
  if (!(s.lo < s.hi)) {
    throw DomainError("sweep", "sweep needs lo < hi");
  }
  s.steps = static_cast<std::size_t>(steps);
  return s;
}

std::pair<std::string, double> parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || trim(text.substr(0, eq)).empty()) {
    throw DomainError("param", "parameter must look like name=value, got '" +
                                   std::string(text) + "'");
  }
  std::string name(trim(text.substr(0, eq)));
  return {name, parse_number(text.substr(eq + 1), name)};
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "family") {
    config.family = std::string(value);
  } else if (key == "measure") {
    config.measure = std::string(value);
  } else if (key == "branch") {
    config.branch = std::string(value);
  } else if (key == "out") {
    config.out = std::string(value);
  } else if (key == "seed") {
    const double s = parse_plain(value, "seed");
    if (!(s >= 0.0) || s != std::floor(s)) {
      throw DomainError("seed", "seed must be a non-negative integer");
    }
    config.seed = static_cast<std::uint64_t>(s);
  } else if (key == "sweep") {
    config.sweep = parse_sweep(value);
  } else if (key == "delta") {
    for (auto part : split(value, ',')) {
      config.deltas.push_back(parse_number(part, "delta"));
    }
  } else if (key == "shots") {
    for (auto part : split(value, ',')) {
      const double m = parse_plain(part, "shots");
      if (!(m >= 1.0) || m != std::floor(m)) {
        throw DomainError("shots", "shots must be positive integers");
      }
      config.shots.push_back(static_cast<std::size_t>(m));
    }
  } else if (key == "param") {
    auto [name, v] = parse_assignment(value);
    config.set_param(name, v);
  } else {
    config.set_param(std::string(key), parse_number(value, key));
  }
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("config", "config line " + std::to_string(line_no) +
                                      " is not key=value");
    }
    apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config", "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig merge_configs(RunConfig base, const RunConfig& flags) {
  if (!flags.family.empty()) base.family = flags.family;
  if (!flags.measure.empty()) base.measure = flags.measure;
  if (!flags.branch.empty()) base.branch = flags.branch;
  if (!flags.out.empty()) base.out = flags.out;
  if (flags.sweep) base.sweep = flags.sweep;
  if (!flags.deltas.empty()) base.deltas = flags.deltas;
  if (!flags.shots.empty()) base.shots = flags.shots;
  if (flags.seed != RunConfig{}.seed) base.seed = flags.seed;
  for (const auto& [n, v] : flags.params) base.set_param(n, v);
  return base;
}

ReportRow evaluate_point(const RunConfig& config) {
  if (config.family.empty()) throw DomainError("family", "missing --family");
  const FamilyId fid = resolve_family(config.family);
  check_param_names(config, fid);
  ReportRow row;
  switch (fid) {
    case FamilyId::TwinBeam: row = evaluate_twin_beam(config); break;
    case FamilyId::Sts: row = evaluate_sts(config); break;
    default: row = evaluate_qubit(config, fid); break;
  }
  row.params = config.params;
  const std::vector<double> deltas =
      config.deltas.empty() ? std::vector<double>{0.1} : config.deltas;
  for (double d : deltas) {
    if (!(d > 0.0)) throw DomainError("delta", "delta must be positive");
  }
  fill_budget(row, deltas);
  return row;
}

std::string format_csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_short(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

int cmd_bound(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const ReportRow row = evaluate_point(config);
    const std::vector<double> deltas =
        config.deltas.empty() ? std::vector<double>{0.1} : config.deltas;
    write_kv(out, "family", config.family);
    write_kv(out, "measure", measure_label(config));
    for (const auto& [n, v] : row.params) write_kv(out, n, format_short(v));
    write_kv(out, "value", format_short(row.value));
    write_kv(out, "H", format_short(row.qfi));
    write_kv(out, "varBound", format_short(row.var_bound));
    write_kv(out, "Q", format_short(row.qsnr));
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      write_kv(out, delta_label(deltas[i]), format_short(row.measurements[i]));
    }
    write_kv(out, "branch", row.branch);
    write_kv(out, "singular", row.singular ? "true" : "false");
    write_kv(out, "status", row.status);
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    report_error(err, e);
    return kExitValidation;
  }
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!config.sweep) throw DomainError("sweep", "missing --sweep name:lo:hi:steps");
    const SweepSpec& sweep = *config.sweep;
    if (sweep.steps < 2 || !(sweep.lo < sweep.hi)) {
      throw DomainError("sweep", "sweep needs steps >= 2 and lo < hi");
    }
    const std::vector<double> deltas =
        config.deltas.empty() ? std::vector<double>{0.1} : config.deltas;

    std::vector<std::string> columns{sweep.name};
    for (const auto& [n, v] : config.params)
      if (n != sweep.name) columns.push_back(n);

    std::ostringstream csv;
    csv << columns.front();
    for (std::size_t i = 1; i < columns.size(); ++i) csv << ',' << columns[i];
    csv << ",value,H,varBound,Q";
    for (double d : deltas) csv << ',' << delta_label(d);
    csv << ",branch,singular,status\n";

    for (std::size_t i = 0; i < sweep.steps; ++i) {
      RunConfig point = config;
      point.set_param(sweep.name, sweep.at(i));
      const ReportRow row = evaluate_point(point);
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) csv << ',';
        csv << format_csv_number(*point.param(columns[c]));
      }
      csv << ',' << format_csv_number(row.value) << ','
          << format_csv_number(row.qfi) << ',' << format_csv_number(row.var_bound)
          << ',' << format_csv_number(row.qsnr);
      for (double m : row.measurements) csv << ',' << format_csv_number(m);
      csv << ',' << row.branch << ',' << (row.singular ? 1 : 0) << ','
          << row.status << '\n';
    }

    if (config.out.empty()) {
      out << csv.str();
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw DomainError("out", "cannot write " + config.out);
      file << csv.str();
      if (!file) throw DomainError("out", "failed writing " + config.out);
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    report_error(err, e);
    return kExitValidation;
  }
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.family.empty()) throw DomainError("family", "missing --family");
    const FamilyId fid = resolve_family(config.family);
    if (fid == FamilyId::TwinBeam || fid == FamilyId::Sts) {
      throw DomainError("family", "simulation needs a finite-dimensional family");
    }
    const ParamFamily family = make_family(to_qubit(fid));
    if (family.arity() != 1) {
      throw DomainError("family", "simulation needs a single-parameter family");
    }
    for (const auto& [n, v] : config.params)
      if (n != family.parameters[0]) {
        throw DomainError(n, "parameter '" + n + "' is not used by " + family.name);
      }
    const double point[] = {require(config, family.parameters[0])};
    const std::vector<std::size_t> shots =
        config.shots.empty() ? std::vector<std::size_t>{1000, 10000, 100000}
                             : config.shots;
    std::ostringstream csv;
    csv << "M,empiricalVar,crb,ratio\n";
    for (std::size_t m : shots) {
      const SimulationResult r = simulate_crb(family, point, 0, m, config.seed);
      csv << m << ',' << format_csv_number(r.empirical_var) << ','
          << format_csv_number(r.crb) << ',' << format_csv_number(r.ratio) << '\n';
    }
    if (config.out.empty()) {
      out << csv.str();
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw DomainError("out", "cannot write " + config.out);
      file << csv.str();
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    report_error(err, e);
    return kExitValidation;
  }
}

}  // namespace entest
