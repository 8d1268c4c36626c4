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

// Experiment configuration: flat key=value text with [section] headers.
//
//   problem = poisson1d
//   method = pinn,cgmpinn
//   seed = 0,1,2
//   adam_iters = 5000
//   [curriculum]
//   beta = 2
//   [problem]
//   alpha1 = 5
//
// A key inside [name] is read as "name.key". Flags are applied after the
// file, in command-line order.

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgmpinn/problems.hpp"
#include "cgmpinn/trainer.hpp"

namespace cgmpinn::cli {

/// A bad key or value; key() names the offending setting.
class UsageError : public std::runtime_error {
 public:
  UsageError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  std::optional<ProblemId> problem;
  std::vector<Method> methods{Method::cgmpinn};
  std::vector<std::uint64_t> seeds{0};
  TrainConfig train;
  std::map<std::string, double> coefficients;
  std::filesystem::path out = "runs";
  int jobs = 1;
};

/// Applies one setting. Throws UsageError for unknown keys or bad values.
void apply_setting(ExperimentConfig& config, const std::string& key,
                   const std::string& value);

/// Reads key=value lines ('#' starts a comment) into config.
void parse_config(std::istream& in, ExperimentConfig& config);
void load_config_file(const std::filesystem::path& path, ExperimentConfig& config);

/// Throws UsageError naming the first missing or inconsistent setting.
void check_complete(const ExperimentConfig& config);

/// Keys accepted by apply_setting, for help output.
std::vector<std::string> known_keys();

}  // namespace cgmpinn::cli
