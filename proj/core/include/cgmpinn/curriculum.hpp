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

// Curriculum-guided sample weighting of collocation residuals.
//
// A refresh fits a Gaussian mixture to the signed residual snapshot, scores
// each component by its responsibility-weighted mean squared residual,
// maps normalized scores through an easy-to-hard schedule tau(k), modulates
// them by relative component precision, and spreads the component weights
// back to the samples through the responsibilities. Sample weights are
// normalized to (approximately) unit mean and then stay frozen until the
// next refresh.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cgmpinn/gmm.hpp"

namespace cgmpinn {

/// cgm: full method. gmm_only: static exp(+beta d) component weights times
/// precision, no schedule. cl_only: schedule applied to per-sample squared
/// residuals, no mixture. uniform: all weights 1.
enum class WeightingVariant { cgm, gmm_only, cl_only, uniform };

std::string_view to_string(WeightingVariant variant);
WeightingVariant parse_variant(std::string_view name);

struct CurriculumConfig {
  double beta = 2.0;
  double c_sat = 0.5;
  int k_max = 7000;
  int k_upd = 100;
  double eps = 1e-8;
  int k_components = 4;
  WeightingVariant variant = WeightingVariant::cgm;
  double reg_covar = 1e-6;
  double gmm_tol = 1e-6;
  int gmm_max_iter = 100;
  std::uint64_t seed = 0;

  /// Throws ConfigError when a bound is violated.
  void validate() const;
};

struct CurriculumState {
  double tau = 0.0;
  std::optional<GmmModel> model;
  std::vector<double> sample_weights;
  std::vector<double> component_weights;
  std::vector<double> difficulty;
  std::vector<double> normalized_difficulty;
  int last_refresh_iter = -1;
};

/// All-ones weights for n samples, before any refresh.
CurriculumState initial_curriculum_state(std::size_t n);

/// min(k / (k_max * c_sat), 1).
double tau(int k, const CurriculumConfig& cfg);

/// d_m = sum_i gamma_im r_i^2 / (sum_i gamma_im + eps).
std::vector<double> component_difficulty(std::span<const double> residuals,
                                         const Responsibilities& gamma, double eps);

/// (d_m - d_min) / (d_max - d_min + eps); all zero on a tie.
std::vector<double> normalize_difficulty(std::span<const double> d, double eps);

/// (1 - tau) exp(-beta d) + tau exp(-beta (1 - d)).
double curriculum_weight(double d_tilde, double tau, double beta);

/// (sigma_min^2 + eps) / (sigma_m^2 + eps), i.e. precision relative to the
/// most precise component.
std::vector<double> precision_factors(std::span<const double> variances, double eps);

/// Component weights for the cgm and gmm_only variants.
std::vector<double> curriculum_component_weights(std::span<const double> d_tilde,
                                                 std::span<const double> variances,
                                                 double tau,
                                                 const CurriculumConfig& cfg);

/// Normalized sample weights n * w_raw_i / (sum_j w_raw_j + eps), where w_raw
/// is the responsibility-weighted component weight (cgm, gmm_only) or the
/// scheduled per-sample weight (cl_only). uniform returns all ones.
std::vector<double> sample_weights(const Responsibilities& gamma,
                                   std::span<const double> w_comp, double tau,
                                   const CurriculumConfig& cfg,
                                   std::span<const double> raw_residuals);

struct WeightBounds {
  double c_minus = 0.0;
  double c_plus = 0.0;
};

/// Sandwich constants for the final sample weights:
///   c- = n e^-beta v / (n + eps),  c+ = n / (n e^-beta v + eps),
///   v  = (var_min + eps) / (var_max + eps).
WeightBounds bound_constants(double beta, double eps, std::size_t n, double var_min,
                             double var_max);

/// Recomputes tau, the mixture (cgm, gmm_only) and all weights from a
/// residual snapshot taken at the pre-step parameters of iteration k.
void refresh(CurriculumState& state, std::span<const double> residual_snapshot, int k,
             const CurriculumConfig& cfg);

}  // namespace cgmpinn
