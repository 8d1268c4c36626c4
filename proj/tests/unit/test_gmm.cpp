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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "cgmpinn/errors.hpp"
#include "cgmpinn/gmm.hpp"
#include "test_support.hpp"

namespace cgmpinn {
namespace {

using testing::gaussian;

std::vector<double> three_clusters(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> r;
  for (int i = 0; i < 500; ++i) r.push_back(-3.0 + 0.4 * gaussian(rng));
  for (int i = 0; i < 300; ++i) r.push_back(0.5 + 0.2 * gaussian(rng));
  for (int i = 0; i < 200; ++i) r.push_back(2.0 + 1.0 * gaussian(rng));
  return r;
}

// Naive log-likelihood, no log-sum-exp.
double naive_log_likelihood(const GmmModel& m, std::span<const double> r) {
  double ll = 0.0;
  for (double x : r) {
    double p = 0.0;
    for (int k = 0; k < m.k(); ++k) {
      const double v = m.variances[k];
      p += m.weights[k] * std::exp(-0.5 * (x - m.means[k]) * (x - m.means[k]) / v) /
           std::sqrt(2.0 * std::numbers::pi * v);
    }
    ll += std::log(p);
  }
  return ll;
}

TEST(Gmm, StandardNormalDensityAtZero) {
  const GmmModel m{{1.0}, {0.0}, {1.0}, 1e-6};
  EXPECT_NEAR(log_likelihood(m, std::vector<double>{0.0}), -0.9189385332046727, 1e-15);
}

TEST(Gmm, LogLikelihoodMatchesNaiveSum) {
  const GmmModel m{{0.2, 0.5, 0.3}, {-1.0, 0.0, 2.0}, {0.5, 1.0, 2.0}, 1e-6};
  const std::vector<double> r = three_clusters(3);
  EXPECT_NEAR(log_likelihood(m, r), naive_log_likelihood(m, r), 1e-9);
}

TEST(Gmm, SingleComponentIsClosedForm) {
  const std::vector<double> r = three_clusters(4);
  double mean = 0.0;
  for (double x : r) mean += x;
  mean /= static_cast<double>(r.size());
  double var = 0.0;
  for (double x : r) var += (x - mean) * (x - mean);
  var /= static_cast<double>(r.size());
  GmmFitOptions o;
  o.k = 1;
  const GmmModel m = fit_gmm(r, o);
  EXPECT_EQ(m.weights[0], 1.0);
  EXPECT_NEAR(m.means[0], mean, 1e-12);
  EXPECT_NEAR(m.variances[0], var, 1e-12 * var);
}

TEST(Gmm, RecoversTwoSeparatedClusters) {
  SplitMix64 rng(11);
  std::vector<double> r;
  for (int i = 0; i < 1000; ++i) r.push_back(-5.0 + gaussian(rng));
  for (int i = 0; i < 1000; ++i) r.push_back(5.0 + gaussian(rng));
  GmmFitOptions o;
  o.k = 2;
  const GmmModel m = fit_gmm(r, o);
  const int lo = m.means[0] < m.means[1] ? 0 : 1;
  EXPECT_NEAR(m.means[lo], -5.0, 0.05);
  EXPECT_NEAR(m.means[1 - lo], 5.0, 0.05);
  EXPECT_NEAR(m.weights[0], 0.5, 0.02);
  EXPECT_NEAR(m.variances[lo], 1.0, 0.1);
}

TEST(Gmm, EmIsMonotone) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const std::vector<double> r = three_clusters(seed);
    GmmFitOptions o;
    o.k = 4;
    o.tol = 1e-14;
    o.max_iter = 400;
    GmmFitTrace trace;
    const GmmModel m = fit_gmm(r, o, &trace);
    ASSERT_GE(trace.log_likelihood.size(), 2u);
    const double n = static_cast<double>(r.size());
    for (std::size_t t = 1; t < trace.log_likelihood.size(); ++t) {
      EXPECT_GE(trace.log_likelihood[t] / n, trace.log_likelihood[t - 1] / n - 1e-10);
    }
    EXPECT_NEAR(trace.log_likelihood.back(), log_likelihood(m, r), 1e-8);
  }
}

TEST(Gmm, ResponsibilitiesAreRowStochastic) {
  const std::vector<double> r = three_clusters(5);
  GmmFitOptions o;
  o.k = 3;
  const GmmModel m = fit_gmm(r, o);
  const Responsibilities g = responsibilities(m, r);
  ASSERT_EQ(g.n, r.size());
  for (std::size_t i = 0; i < g.n; ++i) {
    double s = 0.0;
    for (int k = 0; k < g.k; ++k) {
      EXPECT_GE(g(i, k), 0.0);
      s += g(i, k);
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(Gmm, FarOutliersStayFinite) {
  const GmmModel m{{0.5, 0.5}, {0.0, 1.0}, {1e-6, 1e-6}, 1e-6};
  const Responsibilities g = responsibilities(m, std::vector<double>{1e6});
  EXPECT_TRUE(std::isfinite(g(0, 0)));
  EXPECT_NEAR(g(0, 0) + g(0, 1), 1.0, 1e-15);
}

TEST(Gmm, ConstantDataCollapsesToFloor) {
  const std::vector<double> r(50, 2.5);
  GmmFitOptions o;
  o.k = 3;
  const GmmModel m = fit_gmm(r, o);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(m.means[k], 2.5);
    EXPECT_EQ(m.variances[k], o.reg_covar);
    EXPECT_NEAR(m.weights[k], 1.0 / 3.0, 1e-15);
  }
}

TEST(Gmm, VariancesRespectFloorAndWeightsSumToOne) {
  std::vector<double> r = three_clusters(6);
  for (int i = 0; i < 100; ++i) r.push_back(7.0);  // a point mass
  GmmFitOptions o;
  o.k = 4;
  o.reg_covar = 1e-4;
  const GmmModel m = fit_gmm(r, o);
  double s = 0.0;
  for (int k = 0; k < m.k(); ++k) {
    EXPECT_GE(m.variances[k], 1e-4);
    s += m.weights[k];
  }
  EXPECT_NEAR(s, 1.0, 1e-12);
  EXPECT_NO_THROW(validate(m));
}

TEST(Gmm, FitIsDeterministic) {
  const std::vector<double> r = three_clusters(7);
  GmmFitOptions o;
  o.seed = 99;
  const GmmModel a = fit_gmm(r, o), b = fit_gmm(r, o);
  EXPECT_EQ(a.means, b.means);
  EXPECT_EQ(a.variances, b.variances);
  EXPECT_EQ(a.weights, b.weights);
}

TEST(Gmm, RejectsBadInput) {
  GmmFitOptions o;
  o.k = 4;
  EXPECT_THROW(fit_gmm(std::vector<double>{1.0, 2.0}, o), InputError);
  o.k = 1;
  EXPECT_THROW(fit_gmm(std::vector<double>{1.0, NAN}, o), NumericalError);
  o.reg_covar = 0.0;
  EXPECT_THROW(fit_gmm(std::vector<double>{1.0, 2.0}, o), InputError);
  EXPECT_THROW(validate(GmmModel{{0.7, 0.7}, {0.0, 1.0}, {1.0, 1.0}, 1e-6}), InputError);
}

}  // namespace
}  // namespace cgmpinn
