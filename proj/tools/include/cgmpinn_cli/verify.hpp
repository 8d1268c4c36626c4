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

// Property suites behind `cgmpinn verify <suite>`. Every suite runs with
// fixed seeds and reports one result per invariant.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cgmpinn::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// gradients, gmm, bounds, descent, manufactured.
const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite.
std::vector<CheckResult> run_suite(std::string_view suite);

}  // namespace cgmpinn::cli
