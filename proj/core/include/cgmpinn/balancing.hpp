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

// Relative loss balancing with random lookback.
//
// Per iteration: update_ema() folds the current losses into the moving
// average (remembering the previous average), then compute_lambdas() draws
// one reference for all components -- the previous average with
// probability rho, otherwise the losses of one uniformly chosen earlier
// iteration -- and returns C * softmax((L / (ref + eps)) / kappa).

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "cgmpinn/rng.hpp"

namespace cgmpinn {

struct BalancerConfig {
  bool enabled = false;
  double alpha = 0.999;
  double rho = 0.99;
  double kappa = 0.1;
  std::size_t history = 1000;
  double eps = 1e-8;

  void validate() const;
};

struct BalancerState {
  explicit BalancerState(const BalancerConfig& config, std::uint64_t seed = 0)
      : config(config), rng(seed) {}

  BalancerConfig config;
  bool initialized = false;
  std::vector<double> ema;
  std::vector<double> previous_ema;
  std::deque<std::vector<double>> history;
  SplitMix64 rng;
};

/// ema <- alpha ema + (1 - alpha) L (first call: ema = L); appends L to the
/// bounded history. Throws NumericalError on non-finite or InputError on
/// negative losses.
void update_ema(BalancerState& state, std::span<const double> losses);

/// Loss weights summing to C. Disabled balancers return exactly ones and
/// consume no random draws.
std::vector<double> compute_lambdas(BalancerState& state, std::span<const double> losses);

/// C * softmax(ratios / kappa), with a max shift.
std::vector<double> softmax_weights(std::span<const double> ratios, double kappa);

}  // namespace cgmpinn
