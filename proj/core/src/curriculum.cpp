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

#include "cgmpinn/curriculum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cgmpinn/errors.hpp"
#include "cgmpinn/rng.hpp"

namespace cgmpinn {

std::string_view to_string(WeightingVariant variant) {
  switch (variant) {
    case WeightingVariant::cgm:
      return "cgm";
    case WeightingVariant::gmm_only:
      return "gmm_only";
    case WeightingVariant::cl_only:
      return "cl_only";
    case WeightingVariant::uniform:
      return "uniform";
  }
  return "unknown";
}

WeightingVariant parse_variant(std::string_view name) {
  for (auto v : {WeightingVariant::cgm, WeightingVariant::gmm_only,
                 WeightingVariant::cl_only, WeightingVariant::uniform}) {
    if (name == to_string(v)) return v;
  }
  throw ConfigError("unknown weighting variant '" + std::string(name) + "'");
}

void CurriculumConfig::validate() const {
  if (!(beta > 0.0)) throw ConfigError("curriculum.beta must be > 0");
  if (!(c_sat > 0.0 && c_sat <= 1.0)) throw ConfigError("curriculum.c_sat must be in (0, 1]");
  if (k_max <= 0) throw ConfigError("curriculum.k_max must be positive");
  if (k_upd <= 0) throw ConfigError("curriculum.k_upd must be positive");
  if (!(eps > 0.0)) throw ConfigError("curriculum.eps must be > 0");
  if (k_components <= 0) throw ConfigError("curriculum.k_components must be positive");
  if (!(reg_covar > 0.0)) throw ConfigError("curriculum.reg_covar must be > 0");
  if (!(gmm_tol > 0.0)) throw ConfigError("curriculum.gmm_tol must be > 0");
  if (gmm_max_iter <= 0) throw ConfigError("curriculum.gmm_max_iter must be positive");
}

CurriculumState initial_curriculum_state(std::size_t n) {
  CurriculumState state;
  state.sample_weights.assign(n, 1.0);
  return state;
}

double tau(int k, const CurriculumConfig& cfg) {
  const double saturation = static_cast<double>(cfg.k_max) * cfg.c_sat;
  return std::min(static_cast<double>(std::max(k, 0)) / saturation, 1.0);
}

std::vector<double> component_difficulty(std::span<const double> residuals,
                                         const Responsibilities& gamma, double eps) {
  if (gamma.n != residuals.size()) {
    throw InputError("component_difficulty: responsibilities/residuals size mismatch");
  }
  std::vector<double> d(static_cast<std::size_t>(gamma.k));
  for (int m = 0; m < gamma.k; ++m) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < residuals.size(); ++i) {
      num += gamma(i, m) * residuals[i] * residuals[i];
      den += gamma(i, m);
    }
    d[m] = num / (den + eps);
  }
  return d;
}

std::vector<double> normalize_difficulty(std::span<const double> d, double eps) {
  std::vector<double> out(d.size(), 0.0);
  if (d.empty()) return out;
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  const double d_min = *lo, d_max = *hi;
  for (std::size_t m = 0; m < d.size(); ++m) {
    out[m] = (d[m] - d_min) / (d_max - d_min + eps);
  }
  return out;
}

double curriculum_weight(double d_tilde, double tau, double beta) {
  const double easy = std::exp(-beta * d_tilde);
  const double hard = std::exp(-beta * (1.0 - d_tilde));
  return (1.0 - tau) * easy + tau * hard;
}

std::vector<double> precision_factors(std::span<const double> variances, double eps) {
  const double best = *std::min_element(variances.begin(), variances.end());
  std::vector<double> v(variances.size());
  for (std::size_t m = 0; m < variances.size(); ++m) {
    v[m] = (best + eps) / (variances[m] + eps);
  }
  return v;
}

std::vector<double> curriculum_component_weights(std::span<const double> d_tilde,
                                                 std::span<const double> variances,
                                                 double tau,
                                                 const CurriculumConfig& cfg) {
  if (d_tilde.size() != variances.size()) {
    throw InputError("curriculum_component_weights: size mismatch");
  }
  const std::vector<double> v = precision_factors(variances, cfg.eps);
  std::vector<double> w(d_tilde.size());
  for (std::size_t m = 0; m < d_tilde.size(); ++m) {
    if (cfg.variant == WeightingVariant::gmm_only) {
      w[m] = std::exp(cfg.beta * d_tilde[m]) * v[m];
    } else {
      const double v_eff = (1.0 - tau) * v[m] + tau;
      w[m] = curriculum_weight(d_tilde[m], tau, cfg.beta) * v_eff;
    }
  }
  return w;
}

namespace {

std::vector<double> normalize_unit_mean(std::vector<double> raw, double eps) {
  double sum = 0.0;
  for (double w : raw) sum += w;
  const double n = static_cast<double>(raw.size());
  for (double& w : raw) w = n * w / (sum + eps);
  return raw;
}

}  // namespace

std::vector<double> sample_weights(const Responsibilities& gamma,
                                   std::span<const double> w_comp, double tau,
                                   const CurriculumConfig& cfg,
                                   std::span<const double> raw_residuals) {
  const std::size_t n = raw_residuals.size();
  switch (cfg.variant) {
    case WeightingVariant::uniform:
      return std::vector<double>(n, 1.0);
    case WeightingVariant::cl_only: {
      std::vector<double> sq(n);
      for (std::size_t i = 0; i < n; ++i) sq[i] = raw_residuals[i] * raw_residuals[i];
      const std::vector<double> d = normalize_difficulty(sq, cfg.eps);
      std::vector<double> raw(n);
      for (std::size_t i = 0; i < n; ++i) raw[i] = curriculum_weight(d[i], tau, cfg.beta);
      return normalize_unit_mean(std::move(raw), cfg.eps);
    }
    case WeightingVariant::cgm:
    case WeightingVariant::gmm_only:
      break;
  }
  if (gamma.n != n || static_cast<std::size_t>(gamma.k) != w_comp.size()) {
    throw InputError("sample_weights: responsibilities do not match inputs");
  }
  std::vector<double> raw(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 0.0;
    for (int m = 0; m < gamma.k; ++m) w += gamma(i, m) * w_comp[m];
    raw[i] = w;
  }
  return normalize_unit_mean(std::move(raw), cfg.eps);
}

WeightBounds bound_constants(double beta, double eps, std::size_t n, double var_min,
                             double var_max) {
  if (!(var_min > 0.0) || var_min > var_max) {
    throw InputError("bound_constants: need 0 < var_min <= var_max");
  }
  const double v = (var_min + eps) / (var_max + eps);
  const double nn = static_cast<double>(n);
  const double floor = std::exp(-beta) * v;
  return {nn * floor / (nn + eps), nn / (nn * floor + eps)};
}

void refresh(CurriculumState& state, std::span<const double> residual_snapshot, int k,
             const CurriculumConfig& cfg) {
  state.tau = tau(k, cfg);
  state.last_refresh_iter = k;
  const Responsibilities none;
  switch (cfg.variant) {
    case WeightingVariant::uniform:
      state.model.reset();
      state.component_weights.clear();
      state.difficulty.clear();
      state.normalized_difficulty.clear();
      state.sample_weights.assign(residual_snapshot.size(), 1.0);
      return;
    case WeightingVariant::cl_only:
      state.model.reset();
      state.component_weights.clear();
      state.difficulty.clear();
      state.normalized_difficulty.clear();
      state.sample_weights =
          sample_weights(none, {}, state.tau, cfg, residual_snapshot);
      return;
    case WeightingVariant::cgm:
    case WeightingVariant::gmm_only:
      break;
  }
  GmmFitOptions options;
  options.k = cfg.k_components;
  options.reg_covar = cfg.reg_covar;
  options.tol = cfg.gmm_tol;
  options.max_iter = cfg.gmm_max_iter;
  options.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
  GmmModel model = fit_gmm(residual_snapshot, options);
  const Responsibilities gamma = responsibilities(model, residual_snapshot);
  state.difficulty = component_difficulty(residual_snapshot, gamma, cfg.eps);
  state.normalized_difficulty = normalize_difficulty(state.difficulty, cfg.eps);
  state.component_weights = curriculum_component_weights(
      state.normalized_difficulty, model.variances, state.tau, cfg);
  state.sample_weights =
      sample_weights(gamma, state.component_weights, state.tau, cfg, residual_snapshot);
  state.model = std::move(model);
}

}  // namespace cgmpinn
