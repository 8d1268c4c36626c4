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

// One-dimensional Gaussian mixtures fitted by expectation-maximization.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cgmpinn {

struct GmmModel {
  std::vector<double> weights;    // pi_m, sum to 1
  std::vector<double> means;      // mu_m
  std::vector<double> variances;  // sigma_m^2 >= reg_covar
  double reg_covar = 1e-6;

  int k() const { return static_cast<int>(weights.size()); }
  double min_variance() const;
  double max_variance() const;
};

/// Dense N x K matrix, row-major.
struct Responsibilities {
  std::size_t n = 0;
  int k = 0;
  std::vector<double> values;

  double operator()(std::size_t i, int m) const {
    return values[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(m)];
  }
  double& operator()(std::size_t i, int m) {
    return values[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(m)];
  }
};

struct GmmFitOptions {
  int k = 4;
  double reg_covar = 1e-6;
  double tol = 1e-6;
  int max_iter = 100;
  std::uint64_t seed = 0;
};

/// Diagnostics of one fit.
struct GmmFitTrace {
  /// Total log-likelihood after initialization and after every EM iteration.
  std::vector<double> log_likelihood;
  int iterations = 0;
  bool converged = false;
};

/// EM fit. Means start at the empirical quantiles (m + 1/2) / k, variances
/// at the sample variance, weights uniform; coinciding initial means are
/// separated by a small seeded jitter. Iterates until the per-sample mean
/// log-likelihood improves by less than tol, or max_iter. Every M-step
/// floors the variances at reg_covar. Data with zero spread yields k
/// components at the common value with variance reg_covar.
///
/// Throws InputError if fewer than k samples or k < 1 or reg_covar <= 0,
/// NumericalError on non-finite residuals.
GmmModel fit_gmm(std::span<const double> residuals, const GmmFitOptions& options,
                 GmmFitTrace* trace = nullptr);

/// Posterior responsibilities, computed with a max-log-density shift.
Responsibilities responsibilities(const GmmModel& model,
                                  std::span<const double> residuals);

/// sum_i log sum_m pi_m N(r_i | mu_m, sigma_m^2), in log space.
double log_likelihood(const GmmModel& model, std::span<const double> residuals);

/// Throws InputError when the weights, variances or sizes are inconsistent.
void validate(const GmmModel& model);

}  // namespace cgmpinn
