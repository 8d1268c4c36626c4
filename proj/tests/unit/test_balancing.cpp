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
#include <numbers>

#include "cgmpinn/balancing.hpp"
#include "cgmpinn/errors.hpp"

namespace cgmpinn {
namespace {

BalancerConfig enabled() {
  BalancerConfig c;
  c.enabled = true;
  return c;
}

TEST(Balancing, LambdasSumToComponentCount) {
  BalancerState s(enabled(), 3);
  SplitMix64 rng(1);
  for (int k = 0; k < 300; ++k) {
    const std::vector<double> l{rng.uniform(0.0, 10.0), rng.uniform(0.0, 1.0),
                                rng.uniform(0.0, 0.1)};
    update_ema(s, l);
    const std::vector<double> lam = compute_lambdas(s, l);
    EXPECT_NEAR(lam[0] + lam[1] + lam[2], 3.0, 1e-9);
  }
}

TEST(Balancing, EqualRatiosGiveUnitWeights) {
  for (double r : {0.0, 1.0, 37.5}) {
    for (double w : softmax_weights(std::vector<double>{r, r, r}, 0.1)) {
      EXPECT_NEAR(w, 1.0, 1e-15);
    }
  }
  BalancerState s(enabled());
  update_ema(s, std::vector<double>{2.0, 2.0});
  for (double w : compute_lambdas(s, std::vector<double>{2.0, 2.0})) EXPECT_NEAR(w, 1.0, 1e-15);
}

TEST(Balancing, HugeTemperatureFlattens) {
  const std::vector<double> w = softmax_weights(std::vector<double>{5.0, 0.0, 1e3}, 1e9);
  for (double v : w) EXPECT_LT(std::abs(v - 1.0), 1e-6);
}

TEST(Balancing, TwoComponentClosedForm) {
  const double e = std::numbers::e;
  const std::vector<double> w = softmax_weights(std::vector<double>{1.0, 0.0}, 1.0);
  EXPECT_NEAR(w[0], 2.0 * e / (e + 1.0), 1e-9);
  EXPECT_NEAR(w[1], 2.0 / (e + 1.0), 1e-9);
}

TEST(Balancing, ExtremeRatiosStayFinite) {
  const std::vector<double> w = softmax_weights(std::vector<double>{1e6, 0.0}, 0.1);
  EXPECT_EQ(w[0], 2.0);
  EXPECT_EQ(w[1], 0.0);
}

TEST(Balancing, EmaFollowsRecurrence) {
  BalancerConfig c = enabled();
  c.alpha = 0.9;
  BalancerState s(c);
  update_ema(s, std::vector<double>{1.0});
  EXPECT_EQ(s.ema[0], 1.0);
  update_ema(s, std::vector<double>{3.0});
  EXPECT_NEAR(s.ema[0], 0.9 + 0.3, 1e-15);
  EXPECT_EQ(s.previous_ema[0], 1.0);
  EXPECT_EQ(s.history.size(), 2u);
}

TEST(Balancing, HistoryIsBounded) {
  BalancerConfig c = enabled();
  c.history = 5;
  BalancerState s(c);
  for (int k = 0; k < 20; ++k) update_ema(s, std::vector<double>{static_cast<double>(k)});
  EXPECT_EQ(s.history.size(), 5u);
  EXPECT_EQ(s.history.front()[0], 15.0);
}

TEST(Balancing, DisabledGivesOnesWithoutDraws) {
  BalancerState s(BalancerConfig{}, 9);
  const SplitMix64 before = s.rng;
  update_ema(s, std::vector<double>{4.0, 0.5});
  EXPECT_EQ(compute_lambdas(s, std::vector<double>{4.0, 0.5}), std::vector<double>(2, 1.0));
  EXPECT_EQ(s.rng.next(), SplitMix64(before).next());
}

TEST(Balancing, SameSeedSameLambdas) {
  BalancerConfig c = enabled();
  c.rho = 0.5;
  BalancerState a(c, 4), b(c, 4);
  for (int k = 0; k < 100; ++k) {
    const std::vector<double> l{1.0 / (k + 1), 0.5 + 0.01 * k};
    update_ema(a, l);
    update_ema(b, l);
    EXPECT_EQ(compute_lambdas(a, l), compute_lambdas(b, l));
  }
}

TEST(Balancing, RejectsBadInput) {
  BalancerState s(enabled());
  EXPECT_THROW(compute_lambdas(s, std::vector<double>{1.0}), InputError);
  EXPECT_THROW(update_ema(s, std::vector<double>{NAN}), NumericalError);
  EXPECT_THROW(update_ema(s, std::vector<double>{-1.0}), InputError);
  BalancerConfig c;
  c.kappa = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace cgmpinn
