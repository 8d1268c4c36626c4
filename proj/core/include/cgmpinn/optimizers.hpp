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

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace cgmpinn {

struct AdamState {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::int64_t step = 0;
  std::vector<double> m;
  std::vector<double> v;
};

/// One bias-corrected Adam update of `params` in place.
void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grad, double lr);

/// params <- params - eta * grad.
void gd_step(std::span<double> params, std::span<const double> grad, double eta);

/// Writes the gradient of the objective at x into grad and returns its value.
using ValueAndGradient =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
  int max_iters = 2000;
  int memory = 10;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  double grad_tol = 1e-10;
  /// Curvature pairs with s.y at or below this are discarded.
  double curvature_eps = 1e-10;
  int max_line_search_evals = 25;

  void validate() const;
};

enum class LbfgsStop { max_iters, converged, line_search_failed };
std::string_view to_string(LbfgsStop stop);

struct LbfgsIteration {
  int iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
  int evaluations = 0;
};

struct LbfgsResult {
  std::vector<double> x;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  LbfgsStop stop = LbfgsStop::max_iters;
};

/// Limited-memory BFGS (two-loop recursion, scaled identity initial Hessian)
/// with a strong-Wolfe line search using safeguarded cubic interpolation.
///
/// The accepted point of every iteration is always the most recent
/// objective evaluation, so callers may read side results of the objective
/// from inside `on_iteration`. Trial points whose objective throws
/// NumericalError count as "too far" and are backtracked from; a
/// non-finite objective at the starting point propagates. A failed line
/// search ends the run, keeping the best accepted point.
LbfgsResult lbfgs_run(std::vector<double> x0, const ValueAndGradient& objective,
                      const LbfgsOptions& options,
                      const std::function<void(const LbfgsIteration&)>& on_iteration = {});

}  // namespace cgmpinn
