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

// Total PINN loss and the training pipeline.
//
//   L = lambda_pde * L_pde^w + lambda_bc * L_bc + lambda_ic * L_ic
//
// L_pde^w is the weighted mean of squared interior residuals, L_bc the mean
// squared boundary mismatch and L_ic the mean squared initial mismatch.
// Periodic boundaries contribute a value row and a derivative row per time
// sample; the damped wave contributes a value row and a velocity row per
// initial point. Each loss averages over its rows.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgmpinn/approximator.hpp"
#include "cgmpinn/balancing.hpp"
#include "cgmpinn/curriculum.hpp"
#include "cgmpinn/problems.hpp"

namespace cgmpinn {

struct LossComponents {
  double pde_w = 0.0;
  double pde = 0.0;  // unweighted
  double bc = 0.0;
  double ic = 0.0;
  double total = 0.0;
};

/// The total loss as a jet objective over one combined point cloud
/// (interior, then boundary, then initial points).
///
/// Sample weights and loss multipliers are inputs of the objective and are
/// not differentiated. Two optional hooks let a driver recompute them from
/// the current evaluation before the total is formed: `on_residuals`
/// receives the raw interior residuals, `lambda_provider` the balanced
/// components (L_pde^w, L_bc[, L_ic]) and returns the multipliers.
class PinnLoss final : public JetObjective {
 public:
  PinnLoss(ProblemSpec spec, const PointSets& sets);

  const PointCloud& points() const override { return points_; }
  const JetLayout& layout() const override { return layout_; }
  double evaluate(const JetBatch& jets, JetBatch& adjoint) override;

  const ProblemSpec& spec() const { return spec_; }
  std::size_t interior_count() const { return n_int_; }
  bool has_ic() const { return spec_.time_dependent; }
  /// 2 for stationary problems, 3 otherwise.
  std::size_t component_count() const { return has_ic() ? 3 : 2; }

  void set_sample_weights(std::vector<double> weights);
  void set_lambdas(std::vector<double> lambdas);
  const std::vector<double>& sample_weights() const { return weights_; }
  const std::vector<double>& lambdas() const { return lambdas_; }

  std::function<void(std::span<const double>)> on_residuals;
  std::function<std::vector<double>(std::span<const double>)> lambda_provider;

  /// Results of the most recent evaluate().
  const LossComponents& last() const { return last_; }
  const std::vector<double>& last_residuals() const { return residuals_; }

 private:
  ProblemSpec spec_;
  PointCloud points_;
  JetLayout layout_;
  std::size_t n_int_ = 0, n_bc_ = 0, n_ic_ = 0;
  std::vector<std::pair<int, double>> pde_channels_;
  double logistic_rate_ = 0.0;
  std::vector<double> f_, g_, u0_, v0_;
  std::vector<double> weights_;
  std::vector<double> lambdas_;
  std::vector<double> residuals_;
  LossComponents last_;
};

/// Value of the objective at params (no gradient).
double loss_value(JetEvaluator& evaluator, const ApproximatorParams& params,
                  PinnLoss& loss);

/// (1 / N) sum_i w_i r_i^2 at the given interior points.
double weighted_pde_loss(const ApproximatorParams& params, const ProblemSpec& spec,
                         const PointCloud& interior, std::span<const double> weights);

/// Total loss and its components. `lambdas` has one entry per active
/// component.
LossComponents total_loss(const ApproximatorParams& params, const ProblemSpec& spec,
                          const PointSets& sets, std::span<const double> weights,
                          std::span<const double> lambdas);

// --- configuration -----------------------------------------------------------

enum class OptimizerKind { adam, lbfgs, adam_then_lbfgs, gd };
std::string_view to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(std::string_view name);

enum class Method { pinn, cgmpinn, gmmpinn, clpinn, pinn_relobralo };
std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct MethodTraits {
  WeightingVariant variant;
  bool balancer;
};
MethodTraits method_traits(Method method);

struct TrainConfig {
  OptimizerKind optimizer = OptimizerKind::adam_then_lbfgs;
  Method method = Method::cgmpinn;
  int adam_iters = 5000;
  int lbfgs_iters = 2000;
  int gd_iters = 200;
  double adam_lr = 1e-3;
  double gd_lr = 1e-4;
  int lbfgs_memory = 10;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  std::uint64_t seed = 0;
  /// variant and seed are set from method and seed; k_max = 0 means the
  /// number of first-stage iterations plus L-BFGS iterations.
  CurriculumConfig curriculum{.k_max = 0};
  /// enabled is set from the method unless `relobralo` overrides it.
  BalancerConfig balancer;
  std::optional<bool> relobralo;
  /// When false, weights are refreshed at k = 0 only.
  bool refresh_after_start = true;
  /// Zero or empty entries fall back to the benchmark defaults.
  std::vector<int> hidden_widths;
  int n_interior = 0;
  int n_boundary = 0;
  int n_initial = 0;
  int grid_per_axis = 0;

  void validate() const;
};

/// The configuration with every default and method-derived field filled in.
TrainConfig resolve(const TrainConfig& config, ProblemId problem);

/// Flat (key, value) echo of a resolved configuration, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_echo(const TrainConfig& config);

// --- run record ----------------------------------------------------------------

struct TrainRow {
  int iter = 0;
  double loss_total = 0.0;
  double loss_pde_w = 0.0;
  double loss_pde_unweighted = 0.0;
  double loss_bc = 0.0;
  double loss_ic = 0.0;
  double lambda_pde = 1.0;
  double lambda_bc = 1.0;
  double lambda_ic = 0.0;
  double tau = 0.0;
  double grad_norm = 0.0;
  double wall_ms = 0.0;
};

struct RefreshRow {
  int iter = 0;
  double tau = 0.0;
  std::vector<double> gmm_weights, gmm_means, gmm_variances;
  std::vector<double> difficulty, normalized_difficulty, component_weights;
  double min_sample_weight = 0.0;
  double max_sample_weight = 0.0;
};

struct RunSummary {
  std::string method;
  std::string problem;
  std::uint64_t seed = 0;
  /// "ok" or "diverged".
  std::string status = "ok";
  std::string message;
  ErrorMetrics metrics;
  double cpu_s = 0.0;
  double wall_s = 0.0;
  std::vector<std::pair<std::string, std::string>> config;
};

struct RunRecord {
  std::vector<TrainRow> rows;
  std::vector<RefreshRow> refreshes;
  RunSummary summary;
  ApproximatorParams params;
  ProblemSpec spec;
  PointCloud grid;
  std::vector<double> grid_exact;
  std::vector<double> grid_pred;
};

/// Runs the full pipeline. Numerical failures end the run early with status
/// "diverged"; the rows logged so far are kept and the metrics are computed
/// at the last parameters whose loss was finite.
RunRecord train(const ProblemSpec& spec, const TrainConfig& config,
                const std::function<void(const TrainRow&)>& on_row = {});

}  // namespace cgmpinn
