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

#include <algorithm>
#include <cmath>

#include "cgmpinn/curriculum.hpp"
#include "cgmpinn/errors.hpp"
#include "cgmpinn/rng.hpp"
#include "test_support.hpp"

namespace cgmpinn {
namespace {

using testing::gaussian;

std::vector<double> mixed_residuals(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = i % 4 == 0 ? 10.0 + 3.0 * gaussian(rng) : 0.1 * gaussian(rng);
  }
  return r;
}

TEST(Curriculum, TauRampsThenSaturates) {
  CurriculumConfig cfg;
  cfg.k_max = 1000;
  cfg.c_sat = 0.5;
  EXPECT_EQ(tau(0, cfg), 0.0);
  EXPECT_DOUBLE_EQ(tau(250, cfg), 0.5);
  EXPECT_EQ(tau(500, cfg), 1.0);
  EXPECT_EQ(tau(900, cfg), 1.0);
}

TEST(Curriculum, DifficultyMatchesNaiveSums) {
  Responsibilities g{3, 2, {1.0, 0.0, 0.5, 0.5, 0.25, 0.75}};
  const std::vector<double> r{1.0, 2.0, -4.0};
  const std::vector<double> d = component_difficulty(r, g, 0.0);
  EXPECT_NEAR(d[0], (1.0 + 0.5 * 4.0 + 0.25 * 16.0) / 1.75, 1e-15);
  EXPECT_NEAR(d[1], (0.5 * 4.0 + 0.75 * 16.0) / 1.25, 1e-15);
}

TEST(Curriculum, NormalizationMapsToUnitInterval) {
  const std::vector<double> d{2.0, 5.0, 3.0};
  const std::vector<double> t = normalize_difficulty(d, 0.0);
  EXPECT_EQ(t[0], 0.0);
  EXPECT_EQ(t[1], 1.0);
  EXPECT_NEAR(t[2], 1.0 / 3.0, 1e-15);
  for (double v : normalize_difficulty(std::vector<double>{4.0, 4.0}, 1e-8)) EXPECT_EQ(v, 0.0);
}

TEST(Curriculum, ScheduleFavorsEasyThenHard) {
  const double beta = 2.0;
  EXPECT_EQ(curriculum_weight(0.0, 0.0, beta), 1.0);
  EXPECT_NEAR(curriculum_weight(1.0, 0.0, beta), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(curriculum_weight(1.0, 1.0, beta), 1.0, 1e-15);
  EXPECT_NEAR(curriculum_weight(0.0, 1.0, beta), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(curriculum_weight(0.3, 0.5, beta),
              0.5 * std::exp(-0.6) + 0.5 * std::exp(-1.4), 1e-15);
}

TEST(Curriculum, PrecisionIsRelativeToSharpestComponent) {
  const std::vector<double> v = precision_factors(std::vector<double>{2.0, 1.0, 4.0}, 0.0);
  EXPECT_EQ(v[0], 0.5);
  EXPECT_EQ(v[1], 1.0);
  EXPECT_EQ(v[2], 0.25);
}

TEST(Curriculum, ComponentWeightsPerVariant) {
  const std::vector<double> d{0.0, 1.0};
  const std::vector<double> var{1.0, 2.0};
  CurriculumConfig cfg;
  cfg.eps = 0.0;
  const std::vector<double> early = curriculum_component_weights(d, var, 0.0, cfg);
  EXPECT_EQ(early[0], 1.0);
  EXPECT_NEAR(early[1], std::exp(-2.0) * 0.5, 1e-15);
  // Precision modulation fades out as tau reaches 1.
  const std::vector<double> late = curriculum_component_weights(d, var, 1.0, cfg);
  EXPECT_NEAR(late[0], std::exp(-2.0), 1e-15);
  EXPECT_NEAR(late[1], 1.0, 1e-15);
  cfg.variant = WeightingVariant::gmm_only;
  const std::vector<double> stat = curriculum_component_weights(d, var, 0.7, cfg);
  EXPECT_EQ(stat[0], 1.0);
  EXPECT_NEAR(stat[1], std::exp(2.0) * 0.5, 1e-14);
}

TEST(Curriculum, SampleWeightsHaveUnitMean) {
  const std::vector<double> r = mixed_residuals(400, 1);
  CurriculumState state = initial_curriculum_state(r.size());
  CurriculumConfig cfg;
  cfg.k_max = 100;
  refresh(state, r, 30, cfg);
  double sum = 0.0;
  for (double w : state.sample_weights) sum += w;
  EXPECT_NEAR(sum / 400.0, 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(state.tau, 0.6);
  EXPECT_EQ(state.last_refresh_iter, 30);
  ASSERT_TRUE(state.model.has_value());
  EXPECT_EQ(state.component_weights.size(), 4u);
}

TEST(Curriculum, EarlyTrainingDownweightsLargeResiduals) {
  const std::vector<double> r = mixed_residuals(400, 2);
  CurriculumState state = initial_curriculum_state(r.size());
  CurriculumConfig cfg;
  refresh(state, r, 0, cfg);
  double big = 0.0, small = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) (i % 4 == 0 ? big : small) += state.sample_weights[i];
  EXPECT_LT(big / 100.0, small / 300.0);
  refresh(state, r, cfg.k_max, cfg);
  big = small = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) (i % 4 == 0 ? big : small) += state.sample_weights[i];
  EXPECT_GT(big / 100.0, small / 300.0);
}

TEST(Curriculum, WeightsStayInsideBoundsUnderFuzz) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 20 + rng.below(200);
    std::vector<double> r(n);
    const double scale = std::pow(10.0, rng.uniform(-4.0, 4.0));
    for (double& v : r) v = scale * gaussian(rng) * (rng.uniform() < 0.2 ? 50.0 : 1.0);
    CurriculumConfig cfg;
    cfg.beta = rng.uniform(0.1, 6.0);
    cfg.k_components = 1 + static_cast<int>(rng.below(5));
    CurriculumState state = initial_curriculum_state(n);
    refresh(state, r, static_cast<int>(rng.below(8000)), cfg);
    const WeightBounds b = bound_constants(cfg.beta, cfg.eps, n, state.model->min_variance(),
                                           state.model->max_variance());
    for (double w : state.sample_weights) {
      EXPECT_GE(w, b.c_minus - 1e-9);
      EXPECT_LE(w, b.c_plus + 1e-9);
    }
  }
}

TEST(Curriculum, MixtureFreeVariants) {
  const std::vector<double> r{0.0, 1.0, 2.0, 4.0};
  CurriculumConfig cfg;
  cfg.variant = WeightingVariant::uniform;
  CurriculumState state = initial_curriculum_state(r.size());
  refresh(state, r, 10, cfg);
  EXPECT_EQ(state.sample_weights, std::vector<double>(4, 1.0));
  EXPECT_FALSE(state.model.has_value());

  cfg.variant = WeightingVariant::cl_only;
  cfg.eps = 1e-12;
  refresh(state, r, 0, cfg);
  // tau = 0: weights proportional to exp(-beta * r^2 / 16).
  std::vector<double> raw(4);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += raw[i] = std::exp(-2.0 * r[i] * r[i] / 16.0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(state.sample_weights[i], 4.0 * raw[i] / sum, 1e-10);
  EXPECT_FALSE(state.model.has_value());
}

TEST(Curriculum, RefreshIsDeterministic) {
  const std::vector<double> r = mixed_residuals(300, 3);
  CurriculumConfig cfg;
  cfg.seed = 5;
  CurriculumState a = initial_curriculum_state(r.size()), b = a;
  refresh(a, r, 200, cfg);
  refresh(b, r, 200, cfg);
  EXPECT_EQ(a.sample_weights, b.sample_weights);
}

TEST(Curriculum, ConfigValidation) {
  CurriculumConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.c_sat = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.k_upd = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_EQ(parse_variant("cl_only"), WeightingVariant::cl_only);
  EXPECT_THROW(parse_variant("cgm2"), ConfigError);
}

}  // namespace
}  // namespace cgmpinn
