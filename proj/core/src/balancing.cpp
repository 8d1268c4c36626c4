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

#include "cgmpinn/balancing.hpp"

#include <algorithm>
#include <cmath>

#include "cgmpinn/errors.hpp"

namespace cgmpinn {

void BalancerConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("balancer.alpha must be in (0, 1)");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("balancer.rho must be in (0, 1)");
  if (!(kappa > 0.0)) throw ConfigError("balancer.kappa must be > 0");
  if (history == 0) throw ConfigError("balancer.history must be positive");
  if (!(eps > 0.0)) throw ConfigError("balancer.eps must be > 0");
}

void update_ema(BalancerState& state, std::span<const double> losses) {
  for (double l : losses) {
    if (!std::isfinite(l)) throw NumericalError("balancer: non-finite loss", l);
    if (l < 0.0) throw InputError("balancer: negative loss");
  }
  if (!state.initialized) {
    state.ema.assign(losses.begin(), losses.end());
    state.previous_ema = state.ema;
    state.initialized = true;
  } else {
    if (losses.size() != state.ema.size()) {
      throw InputError("balancer: loss component count changed");
    }
    state.previous_ema = state.ema;
    const double a = state.config.alpha;
    for (std::size_t c = 0; c < losses.size(); ++c) {
      state.ema[c] = a * state.ema[c] + (1.0 - a) * losses[c];
    }
  }
  state.history.emplace_back(losses.begin(), losses.end());
  while (state.history.size() > state.config.history) state.history.pop_front();
}

std::vector<double> softmax_weights(std::span<const double> ratios, double kappa) {
  const std::size_t c = ratios.size();
  std::vector<double> out(c);
  if (c == 0) return out;
  double peak = ratios[0] / kappa;
  for (double r : ratios) peak = std::max(peak, r / kappa);
  double sum = 0.0;
  for (std::size_t i = 0; i < c; ++i) {
    out[i] = std::exp(ratios[i] / kappa - peak);
    sum += out[i];
  }
  for (double& w : out) w = static_cast<double>(c) * w / sum;
  return out;
}

std::vector<double> compute_lambdas(BalancerState& state, std::span<const double> losses) {
  if (!state.config.enabled) return std::vector<double>(losses.size(), 1.0);
  if (!state.initialized) {
    throw InputError("balancer: compute_lambdas called before update_ema");
  }
  // The newest history entry is the current iteration; lookback draws from
  // the strictly earlier ones.
  const std::size_t earlier = state.history.empty() ? 0 : state.history.size() - 1;
  const bool use_ema = state.rng.uniform() < state.config.rho;
  const std::vector<double>* reference = &state.previous_ema;
  if (!use_ema && earlier > 0) {
    reference = &state.history[state.rng.below(earlier)];
  }
  std::vector<double> ratios(losses.size());
  for (std::size_t c = 0; c < losses.size(); ++c) {
    ratios[c] = losses[c] / ((*reference)[c] + state.config.eps);
  }
  return softmax_weights(ratios, state.config.kappa);
}

}  // namespace cgmpinn
