// Copyright 2026 The CGMPINN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cgmpinn run    --problem poisson1d --method pinn,cgmpinn --seed 0,1,2
// cgmpinn verify bounds
// cgmpinn --verify manufactured

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cgmpinn_cli/config.hpp"
#include "cgmpinn_cli/experiment.hpp"
#include "cgmpinn_cli/verify.hpp"

namespace {

constexpr int kUsageExit = 2;

int run_verify(const std::string& suite) {
  using cgmpinn::cli::suite_names;
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = suite_names();
  } else {
    suites.push_back(suite);
  }
  int failures = 0;
  for (const std::string& name : suites) {
    for (const auto& r : cgmpinn::cli::run_suite(name)) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << name << ": " << r.name << " (" << r.detail
                << ")\n";
      if (!r.passed) ++failures;
    }
  }
  std::cout << (failures == 0 ? "all checks passed" : std::to_string(failures) + " failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curriculum-guided Gaussian-mixture PINN experiments"};
  app.require_subcommand(0, 1);

  std::string top_verify;
  app.add_option("--verify", top_verify, "Run a verification suite and exit");

  auto* run = app.add_subcommand("run", "Train one or more (method, seed) runs");
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> flags;
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    run->add_option_function<std::string>(
        name, [&flags, key](const std::string& v) { flags.emplace_back(key, v); }, help);
  };
  run->add_option("--config", config_path, "key=value config file");
  flag("--problem", "problem", "poisson1d|poisson2d|heat|damped_wave|advdiff|fisher_kpp");
  flag("--method", "method", "comma list of pinn|cgmpinn|gmmpinn|clpinn|pinn_relobralo");
  flag("--seed", "seed", "comma list of seeds");
  flag("--out", "out", "output directory (default $CGMPINN_OUT or ./runs)");
  flag("--optimizer", "optimizer", "adam|lbfgs|adam_then_lbfgs|gd");
  flag("--adam-iters", "adam_iters", "Adam iterations");
  flag("--lbfgs-iters", "lbfgs_iters", "L-BFGS iterations");
  flag("--k-upd", "curriculum.k_upd", "iterations between mixture refreshes");
  flag("--k-components", "curriculum.k_components", "mixture components");
  flag("--beta", "curriculum.beta", "curriculum sharpness");
  flag("--c-sat", "curriculum.c_sat", "fraction of k_max at which tau saturates");
  flag("--relobralo", "relobralo", "on|off, overrides the method default");
  flag("--jobs", "jobs", "parallel runs");
  std::vector<std::string> sets;
  run->add_option("--set", sets, "extra key=value settings (repeatable)");

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::string suite;
  verify->add_option("suite", suite, "gradients|gmm|bounds|descent|manufactured|all")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!top_verify.empty()) return run_verify(top_verify);
    if (verify->parsed()) return run_verify(suite);
    if (!run->parsed()) {
      std::cerr << app.help();
      return kUsageExit;
    }

    cgmpinn::cli::ExperimentConfig config;
    if (const char* env = std::getenv("CGMPINN_OUT"); env && *env) config.out = env;
    if (!config_path.empty()) cgmpinn::cli::load_config_file(config_path, config);
    for (const auto& [key, value] : flags) cgmpinn::cli::apply_setting(config, key, value);
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw cgmpinn::cli::UsageError(kv, "--set expects key=value, got '" + kv + "'");
      }
      cgmpinn::cli::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    cgmpinn::cli::check_complete(config);

    const auto outcomes = cgmpinn::cli::run_experiment(config, std::cerr);
    cgmpinn::cli::print_table(std::cout, outcomes);
    bool all_ok = true;
    for (const auto& o : outcomes) all_ok = all_ok && o.ok();
    return all_ok ? 0 : 1;
  } catch (const cgmpinn::cli::UsageError& e) {
    std::cerr << "usage error [" << e.key() << "]: " << e.what() << '\n';
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
