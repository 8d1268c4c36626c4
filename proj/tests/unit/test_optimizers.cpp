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

#include "cgmpinn/errors.hpp"
#include "cgmpinn/optimizers.hpp"

namespace cgmpinn {
namespace {

double half_square(std::span<const double> x, std::span<double> g) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    f += 0.5 * x[i] * x[i];
    g[i] = x[i];
  }
  return f;
}

double rosenbrock(std::span<const double> x, std::span<double> g) {
  const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
  g[0] = -2.0 * a - 400.0 * x[0] * b;
  g[1] = 200.0 * b;
  return a * a + 100.0 * b * b;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  AdamState s;
  std::vector<double> p{1.0, -2.0, 0.5};
  const std::vector<double> g{3.0, -0.01, 1e3};
  adam_step(s, p, g, 0.1);
  // m_hat = g, v_hat = g^2, so the step is lr * sign(g) up to eps.
  EXPECT_NEAR(p[0], 0.9, 1e-8);
  EXPECT_NEAR(p[1], -1.9, 1e-6);
  EXPECT_NEAR(p[2], 0.4, 1e-8);
  EXPECT_EQ(s.step, 1);
}

TEST(Adam, MatchesHandRolledRecurrence) {
  AdamState s;
  std::vector<double> p{0.3};
  double m = 0.0, v = 0.0, x = 0.3;
  for (int t = 1; t <= 50; ++t) {
    const double g = 2.0 * x - std::sin(t);
    adam_step(s, p, std::vector<double>{2.0 * p[0] - std::sin(t)}, 0.01);
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    const double mh = m / (1.0 - std::pow(0.9, t)), vh = v / (1.0 - std::pow(0.999, t));
    x -= 0.01 * mh / (std::sqrt(vh) + 1e-8);
    EXPECT_NEAR(p[0], x, 1e-14);
  }
}

TEST(Adam, ZeroGradientLeavesParameters) {
  AdamState s;
  std::vector<double> p{1.5, 2.5};
  adam_step(s, p, std::vector<double>{0.0, 0.0}, 0.1);
  EXPECT_EQ(p, (std::vector<double>{1.5, 2.5}));
}

TEST(Adam, RejectsBadGradients) {
  AdamState s;
  std::vector<double> p{1.0};
  EXPECT_THROW(adam_step(s, p, std::vector<double>{1.0, 2.0}, 0.1), InputError);
  EXPECT_THROW(adam_step(s, p, std::vector<double>{NAN}, 0.1), NumericalError);
}

TEST(GradientDescent, StepsAgainstGradient) {
  std::vector<double> p{1.0, 2.0};
  gd_step(p, std::vector<double>{10.0, -20.0}, 0.1);
  EXPECT_NEAR(p[0], 0.0, 1e-15);
  EXPECT_NEAR(p[1], 4.0, 1e-15);
}

TEST(Lbfgs, QuadraticInTwoIterations) {
  LbfgsOptions o;
  o.max_iters = 2;
  const LbfgsResult r = lbfgs_run({3.0, -4.0, 0.5, 12.0}, half_square, o);
  EXPECT_LT(norm(r.x), 1e-8);
  EXPECT_LE(r.iterations, 2);
}

TEST(Lbfgs, RosenbrockFromClassicalStart) {
  LbfgsOptions o;
  o.max_iters = 100;
  o.grad_tol = 1e-12;
  const LbfgsResult r = lbfgs_run({-1.2, 1.0}, rosenbrock, o);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
  EXPECT_LE(r.iterations, 100);
}

TEST(Lbfgs, AcceptedStepsNeverIncrease) {
  LbfgsOptions o;
  o.max_iters = 60;
  std::vector<double> values;
  lbfgs_run({-1.2, 1.0}, rosenbrock, o,
            [&](const LbfgsIteration& it) { values.push_back(it.value); });
  ASSERT_GT(values.size(), 5u);
  for (std::size_t i = 1; i < values.size(); ++i) EXPECT_LE(values[i], values[i - 1]);
}

TEST(Lbfgs, ZeroGradientStopsImmediately) {
  const std::vector<double> x0{0.0, 0.0};
  int calls = 0;
  const LbfgsResult r = lbfgs_run(
      x0,
      [&](std::span<const double> x, std::span<double> g) {
        ++calls;
        return half_square(x, g);
      },
      LbfgsOptions{});
  EXPECT_EQ(r.x, x0);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.stop, LbfgsStop::converged);
  EXPECT_EQ(calls, 1);
}

TEST(Lbfgs, NonFiniteStartThrows) {
  auto bad = [](std::span<const double>, std::span<double> g) {
    g[0] = 0.0;
    return std::numeric_limits<double>::quiet_NaN();
  };
  EXPECT_THROW(lbfgs_run({1.0}, bad, LbfgsOptions{}), NumericalError);
}

TEST(Lbfgs, BacktracksFromNonFiniteTrials) {
  // exp blows up far to the right; the line search must retreat.
  auto f = [](std::span<const double> x, std::span<double> g) {
    if (x[0] > 3.0) throw NumericalError("overflow", INFINITY);
    g[0] = 2.0 * (x[0] - 2.5);
    return (x[0] - 2.5) * (x[0] - 2.5);
  };
  LbfgsOptions o;
  o.max_iters = 20;
  const LbfgsResult r = lbfgs_run({-200.0}, f, o);
  EXPECT_NEAR(r.x[0], 2.5, 1e-6);
}

TEST(Lbfgs, OptionsAreValidated) {
  LbfgsOptions o;
  o.wolfe_c2 = 1e-5;
  EXPECT_THROW(o.validate(), ConfigError);
  o = {};
  o.memory = 0;
  EXPECT_THROW(o.validate(), ConfigError);
}

}  // namespace
}  // namespace cgmpinn
