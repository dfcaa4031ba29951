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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entest/errors.hpp"
#include "entest/report.hpp"

namespace {

struct FlagValues {
  std::string family;
  std::string measure;
  std::vector<std::string> params;
  std::string sweep;
  std::vector<std::string> deltas;
  std::string branch;
  std::string out;
  std::string seed;
  std::string config;
  std::vector<std::string> shots;
};

void add_common(CLI::App* cmd, FlagValues& f) {
  cmd->add_option("--family", f.family, "schmidt | mixture | werner | horodecki | twinBeam | sts");
  cmd->add_option("--measure", f.measure, "negativity | linear_entropy | lur | dtilde | ...");
  cmd->add_option("--param", f.params, "name=value (repeatable)");
  cmd->add_option("--delta", f.deltas, "relative error for M_delta (repeatable)");
  cmd->add_option("--branch", f.branch, "lower | upper");
  cmd->add_option("--out", f.out, "output path");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--config", f.config, "key=value config file");
}

entest::RunConfig build_config(const FlagValues& f) {
  using entest::apply_setting;
  entest::RunConfig flags;
  if (!f.family.empty()) apply_setting(flags, "family", f.family);
  if (!f.measure.empty()) apply_setting(flags, "measure", f.measure);
  for (const auto& p : f.params) apply_setting(flags, "param", p);
  if (!f.sweep.empty()) apply_setting(flags, "sweep", f.sweep);
  for (const auto& d : f.deltas) apply_setting(flags, "delta", d);
  if (!f.branch.empty()) apply_setting(flags, "branch", f.branch);
  if (!f.out.empty()) apply_setting(flags, "out", f.out);
  if (!f.seed.empty()) apply_setting(flags, "seed", f.seed);
  for (const auto& s : f.shots) apply_setting(flags, "shots", s);
  if (f.config.empty()) return flags;
  entest::RunConfig merged = entest::merge_configs(entest::load_config_file(f.config), flags);
  if (!f.seed.empty()) merged.seed = flags.seed;
  return merged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum precision bounds for entanglement estimation"};
  app.require_subcommand(1);

  FlagValues flags;
  auto* bound = app.add_subcommand("bound", "evaluate one point");
  add_common(bound, flags);

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter to CSV");
  add_common(sweep, flags);
  sweep->add_option("--sweep", flags.sweep, "name:lo:hi:steps");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo SLD measurement");
  add_common(simulate, flags);
  simulate->add_option("--shots", flags.shots, "shot counts (repeatable)");

  entest::VerifyOptions verify_options;
  std::string verify_seed;
  auto* verify = app.add_subcommand("verify", "run the regression catalogue");
  verify->add_option("--seed", verify_seed, "random seed");
  verify->add_option("--werner-perturbation", verify_options.werner_perturbation)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? entest::kExitOk : entest::kExitValidation;
  }

  try {
    if (verify->parsed()) {
      if (!verify_seed.empty()) {
        entest::RunConfig tmp;
        entest::apply_setting(tmp, "seed", verify_seed);
        verify_options.seed = tmp.seed;
      }
      return entest::cmd_verify(verify_options, std::cout);
    }
    const entest::RunConfig config = build_config(flags);
    if (bound->parsed()) return entest::cmd_bound(config, std::cout, std::cerr);
    if (sweep->parsed()) return entest::cmd_sweep(config, std::cout, std::cerr);
    return entest::cmd_simulate(config, std::cout, std::cerr);
  } catch (const entest::DomainError& e) {
    std::cerr << "error: " << e.what() << " [parameter: " << e.parameter() << "]\n";
    return entest::kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return entest::kExitValidation;
  }
}
