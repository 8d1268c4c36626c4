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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

#include "cgmpinn/approximator.hpp"
#include "cgmpinn/problems.hpp"
#include "cgmpinn/rng.hpp"

namespace cgmpinn::testing {

/// ||a - b|| / ||b||.
inline double rel_error(std::span<const double> a, std::span<const double> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

inline double gaussian(SplitMix64& rng) {
  const double u1 = rng.uniform_open(), u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Glorot weights plus small perturbations of every entry, so biases are
/// nonzero too.
inline ApproximatorParams random_network(std::vector<int> sizes, std::uint64_t seed) {
  ApproximatorParams p = init_network(sizes, seed);
  SplitMix64 rng(seed ^ 0x5eedULL);
  for (double& v : p.values) v += 0.1 * rng.uniform(-1.0, 1.0);
  return p;
}

}  // namespace cgmpinn::testing

namespace cgmpinn {

// Readable parameter names in test listings.
inline void PrintTo(ProblemId id, std::ostream* os) { *os << to_string(id); }

}  // namespace cgmpinn
