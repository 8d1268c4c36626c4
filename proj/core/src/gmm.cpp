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

#include "cgmpinn/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cgmpinn/errors.hpp"
#include "cgmpinn/rng.hpp"

namespace cgmpinn {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // log(2 pi)

double log_normal(double r, double mean, double variance) {
  const double d = r - mean;
  return -0.5 * (kLog2Pi + std::log(variance)) - 0.5 * d * d / variance;
}

double log_weight(double w) {
  return w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity();
}

// E-step: fills gamma (if non-null) and returns the total log-likelihood.
double expectation(const GmmModel& model, std::span<const double> r,
                   std::vector<double>* gamma) {
  const int k = model.k();
  std::vector<double> logp(static_cast<std::size_t>(k));
  std::vector<double> log_w(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) log_w[m] = log_weight(model.weights[m]);
  double total = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double peak = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < k; ++m) {
      logp[m] = log_w[m] + log_normal(r[i], model.means[m], model.variances[m]);
      peak = std::max(peak, logp[m]);
    }
    double sum = 0.0;
    for (int m = 0; m < k; ++m) sum += std::exp(logp[m] - peak);
    const double lse = peak + std::log(sum);
    total += lse;
    if (gamma) {
      double* row = gamma->data() + i * static_cast<std::size_t>(k);
      for (int m = 0; m < k; ++m) row[m] = std::exp(logp[m] - lse);
    }
  }
  return total;
}

void maximization(GmmModel& model, std::span<const double> r,
                  const std::vector<double>& gamma) {
  const int k = model.k();
  const double n = static_cast<double>(r.size());
  double weight_sum = 0.0;
  for (int m = 0; m < k; ++m) {
    double nm = 0.0, sr = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double g = gamma[i * static_cast<std::size_t>(k) + m];
      nm += g;
      sr += g * r[i];
    }
    model.weights[m] = nm / n;
    weight_sum += model.weights[m];
    // An empty component keeps its location; its weight is zero anyway.
    if (!(nm > 0.0)) continue;
    const double mean = sr / nm;
    double ss = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double d = r[i] - mean;
      ss += gamma[i * static_cast<std::size_t>(k) + m] * d * d;
    }
    model.means[m] = mean;
    model.variances[m] = std::max(ss / nm, model.reg_covar);
  }
  for (double& w : model.weights) w /= weight_sum;
}

double quantile(const std::vector<double>& sorted, double level) {
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double GmmModel::min_variance() const {
  return *std::min_element(variances.begin(), variances.end());
}

double GmmModel::max_variance() const {
  return *std::max_element(variances.begin(), variances.end());
}

void validate(const GmmModel& model) {
  const std::size_t k = model.weights.size();
  if (k == 0 || model.means.size() != k || model.variances.size() != k) {
    throw InputError("GmmModel: inconsistent component counts");
  }
  if (!(model.reg_covar > 0.0)) throw InputError("GmmModel: reg_covar must be positive");
  double sum = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    if (!(model.weights[m] >= 0.0)) throw InputError("GmmModel: negative weight");
    if (!(model.variances[m] > 0.0)) throw InputError("GmmModel: non-positive variance");
    sum += model.weights[m];
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("GmmModel: weights do not sum to 1");
}

GmmModel fit_gmm(std::span<const double> residuals, const GmmFitOptions& options,
                 GmmFitTrace* trace) {
  const int k = options.k;
  if (k < 1) throw InputError("fit_gmm: k must be >= 1");
  if (!(options.reg_covar > 0.0)) throw InputError("fit_gmm: reg_covar must be positive");
  if (residuals.size() < static_cast<std::size_t>(k)) {
    throw InputError("fit_gmm: " + std::to_string(residuals.size()) +
                     " samples for " + std::to_string(k) + " components");
  }
  for (double r : residuals) {
    if (!std::isfinite(r)) throw NumericalError("fit_gmm: non-finite residual", r);
  }

  const double n = static_cast<double>(residuals.size());
  double mean = 0.0;
  for (double r : residuals) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : residuals) var += (r - mean) * (r - mean);
  var /= n;

  GmmModel model;
  model.reg_covar = options.reg_covar;
  model.weights.assign(static_cast<std::size_t>(k), 1.0 / k);
  model.variances.assign(static_cast<std::size_t>(k), std::max(var, options.reg_covar));

  std::vector<double> sorted(residuals.begin(), residuals.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    model.means.assign(static_cast<std::size_t>(k), sorted.front());
    model.variances.assign(static_cast<std::size_t>(k), options.reg_covar);
    if (trace) {
      trace->log_likelihood = {log_likelihood(model, residuals)};
      trace->iterations = 0;
      trace->converged = true;
    }
    return model;
  }

  SplitMix64 rng(options.seed);
  const double spread = std::sqrt(var);
  model.means.resize(static_cast<std::size_t>(k));
  for (int m = 0; m < k; ++m) {
    model.means[m] = quantile(sorted, (m + 0.5) / k);
    if (m > 0 && model.means[m] <= model.means[m - 1]) {
      model.means[m] = model.means[m - 1] + 1e-3 * spread * (1.0 + rng.uniform());
    }
  }

  std::vector<double> gamma(residuals.size() * static_cast<std::size_t>(k));
  double ll = expectation(model, residuals, &gamma);
  GmmFitTrace local;
  local.log_likelihood.push_back(ll);
  for (int it = 1; it <= options.max_iter; ++it) {
    maximization(model, residuals, gamma);
    const double next = expectation(model, residuals, &gamma);
    local.log_likelihood.push_back(next);
    local.iterations = it;
    const double gain = (next - ll) / n;
    ll = next;
    if (gain < options.tol) {
      local.converged = true;
      break;
    }
  }
  if (trace) *trace = std::move(local);
  return model;
}

Responsibilities responsibilities(const GmmModel& model,
                                  std::span<const double> residuals) {
  validate(model);
  Responsibilities out;
  out.n = residuals.size();
  out.k = model.k();
  out.values.resize(out.n * static_cast<std::size_t>(out.k));
  expectation(model, residuals, &out.values);
  return out;
}

double log_likelihood(const GmmModel& model, std::span<const double> residuals) {
  validate(model);
  return expectation(model, residuals, nullptr);
}

}  // namespace cgmpinn
