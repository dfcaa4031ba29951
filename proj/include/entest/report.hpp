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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace entest {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitVerification = 2;

struct SweepSpec {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;

  double at(std::size_t i) const noexcept;
};

struct RunConfig {
  std::string family;
  std::string measure;
  std::vector<std::pair<std::string, double>> params;  // in insertion order
  std::optional<SweepSpec> sweep;
  std::vector<double> deltas;
  std::string branch;
  std::string out;
  std::uint64_t seed = 1;
  std::vector<std::size_t> shots;

  /// Insert or overwrite a parameter, keeping first-seen order.
  void set_param(const std::string& name, double value);
  std::optional<double> param(std::string_view name) const;
};

/// Decimal or fraction ("4/13"). Throws DomainError on malformed input.
double parse_number(std::string_view text, std::string_view what);

/// "name:lo:hi:steps"
SweepSpec parse_sweep(std::string_view text);

/// "name=value"
std::pair<std::string, double> parse_assignment(std::string_view text);

/// Applies one key=value setting. Unknown keys are parameter assignments.
void apply_setting(RunConfig& config, std::string_view key,
                   std::string_view value);

/// Flat key=value text, '#' starts a comment.
RunConfig parse_config_text(std::string_view text);
RunConfig load_config_file(const std::string& path);

/// Overlay `flags` on `base`: scalar fields set in flags win, parameters are
/// merged by name, list fields from flags replace the base lists.
RunConfig merge_configs(RunConfig base, const RunConfig& flags);

/// One evaluated point.
struct ReportRow {
  std::vector<std::pair<std::string, double>> params;
  double value = 0.0;
  double qfi = 0.0;
  double var_bound = 0.0;
  double qsnr = 0.0;
  std::vector<double> measurements;  // one per delta
  std::string branch;
  bool singular = false;
  std::string status;
};

/// Evaluates the configured family/measure at the configured parameters.
ReportRow evaluate_point(const RunConfig& config);

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_csv_number(double x);
/// Shortest round-trip representation.
std::string format_short(double x);

int cmd_bound(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

struct VerifyOptions {
  /// Relative perturbation of the Werner closed form (mutation fixture).
  double werner_perturbation = 0.0;
  std::uint64_t seed = 1;
};

struct SuiteOutcome {
  std::string id;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// Formula ids every verification run must cover.
const std::vector<std::string>& verification_manifest();

std::vector<SuiteOutcome> run_verification(const VerifyOptions& options);
int cmd_verify(const VerifyOptions& options, std::ostream& out);

}  // namespace entest
