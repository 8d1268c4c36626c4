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
#include <map>

#include "cgmpinn/errors.hpp"
#include "cgmpinn/optimizers.hpp"
#include "cgmpinn/rng.hpp"
#include "cgmpinn/trainer.hpp"
#include "test_support.hpp"

namespace cgmpinn {
namespace {

using testing::rel_error;

Jet jet_at(const JetBatch& b, std::size_t j, int d) {
  Jet jet{b.value(j), std::vector<double>(d), std::vector<double>(d * d, 0.0)};
  for (int a = 0; a < d; ++a) {
    jet.grad[a] = b.grad(a, j);
    jet.hess[a * d + a] = b.second(a, a, j);
  }
  return jet;
}

// Unweighted mean-squared PINN loss for problems with a linear operator and
// Dirichlet data, assembled from the pointwise residual functions only.
class PlainReference final : public JetObjective {
 public:
  PlainReference(ProblemSpec spec, const PointSets& sets)
      : spec_(std::move(spec)),
        cloud_(spec_.input_dim()),
        layout_(JetLayout::diagonal(spec_.input_dim())),
        n_int_(sets.interior.size()),
        n_bc_(sets.boundary.size()),
        n_ic_(sets.initial.size()) {
    for (std::size_t i = 0; i < n_int_; ++i) cloud_.push_back(sets.interior[i]);
    for (std::size_t i = 0; i < n_bc_; ++i) cloud_.push_back(sets.boundary[i]);
    for (std::size_t i = 0; i < n_ic_; ++i) cloud_.push_back(sets.initial[i]);
  }
  const PointCloud& points() const override { return cloud_; }
  const JetLayout& layout() const override { return layout_; }

  double evaluate(const JetBatch& jets, JetBatch& adj) override {
    const int d = spec_.input_dim();
    double pde = 0.0, bc = 0.0, ic = 0.0;
    for (std::size_t j = 0; j < n_int_; ++j) {
      const auto x = cloud_[j];
      const Jet jet = jet_at(jets, j, d);
      const double r = pde_residual(spec_, jet, x);
      pde += r * r;
      // Linear operator: each channel's coefficient from a unit probe.
      const double base = pde_residual(spec_, Jet{0.0, std::vector<double>(d), std::vector<double>(d * d)}, x);
      const double s = 2.0 * r / static_cast<double>(n_int_);
      Jet probe{1.0, std::vector<double>(d), std::vector<double>(d * d)};
      adj.channel(0)[j] += s * (pde_residual(spec_, probe, x) - base);
      for (int a = 0; a < d; ++a) {
        probe = Jet{0.0, std::vector<double>(d), std::vector<double>(d * d)};
        probe.grad[a] = 1.0;
        adj.channel(layout_.grad_channel(a))[j] += s * (pde_residual(spec_, probe, x) - base);
        probe.grad[a] = 0.0;
        probe.hess[a * d + a] = 1.0;
        adj.channel(layout_.second_channel(a, a))[j] += s * (pde_residual(spec_, probe, x) - base);
      }
    }
    for (std::size_t j = n_int_; j < n_int_ + n_bc_; ++j) {
      const double r = jets.value(j) - source_and_data(spec_, cloud_[j], DataKind::bc);
      bc += r * r;
      adj.channel(0)[j] += 2.0 * r / static_cast<double>(n_bc_);
    }
    for (std::size_t j = n_int_ + n_bc_; j < cloud_.size(); ++j) {
      const double r = jets.value(j) - source_and_data(spec_, cloud_[j], DataKind::ic);
      ic += r * r;
      adj.channel(0)[j] += 2.0 * r / static_cast<double>(n_ic_);
    }
    double total = pde / static_cast<double>(n_int_) + bc / static_cast<double>(n_bc_);
    if (n_ic_ > 0) total += ic / static_cast<double>(n_ic_);
    return total;
  }

 private:
  ProblemSpec spec_;
  PointCloud cloud_;
  JetLayout layout_;
  std::size_t n_int_, n_bc_, n_ic_;
};

TrainConfig small_config(Method method, OptimizerKind opt) {
  TrainConfig c;
  c.method = method;
  c.optimizer = opt;
  c.adam_iters = 40;
  c.lbfgs_iters = 20;
  c.gd_iters = 20;
  c.hidden_widths = {8, 8};
  c.n_interior = 64;
  c.n_boundary = 16;
  c.n_initial = 16;
  c.grid_per_axis = 11;
  c.curriculum.k_upd = 10;
  return c;
}

class PlainPinn : public ::testing::TestWithParam<ProblemId> {};

TEST_P(PlainPinn, MatchesIndependentReference) {
  const ProblemSpec spec = make_problem(GetParam());
  TrainConfig cfg = small_config(Method::pinn, OptimizerKind::adam);
  cfg.seed = 6;
  const RunRecord rec = train(spec, cfg);

  const PointSets sets = sample_points(spec, cfg.n_interior, cfg.n_boundary,
                                       spec.time_dependent ? cfg.n_initial : 0,
                                       derive_seed(cfg.seed, 20));
  ApproximatorParams p =
      init_network(std::vector<int>{spec.input_dim(), 8, 8, 1}, derive_seed(cfg.seed, 10));
  PlainReference ref(spec, sets);
  AdamState adam;
  ASSERT_EQ(rec.rows.size(), 40u);
  for (int k = 0; k < 40; ++k) {
    const ObjectiveValue ov = objective_gradient(p, ref);
    EXPECT_NEAR(rec.rows[k].loss_total, ov.value, 1e-12 * ov.value) << "iteration " << k;
    EXPECT_EQ(rec.rows[k].lambda_pde, 1.0);
    EXPECT_EQ(rec.rows[k].lambda_bc, 1.0);
    adam_step(adam, p.values, ov.gradient, cfg.adam_lr);
  }
}

INSTANTIATE_TEST_SUITE_P(LinearDirichlet, PlainPinn,
                         ::testing::Values(ProblemId::poisson1d, ProblemId::poisson2d,
                                           ProblemId::heat),
                         [](const auto& info) { return std::string(to_string(info.param)); });

class LossGradient : public ::testing::TestWithParam<ProblemId> {};

TEST_P(LossGradient, MatchesCentralDifferences) {
  const ProblemSpec spec = make_problem(GetParam());
  const PointSets sets = sample_points(spec, 30, 6, 6, 2);
  PinnLoss loss(spec, sets);
  SplitMix64 rng(3);
  std::vector<double> w(30);
  for (double& v : w) v = rng.uniform(0.2, 2.0);
  loss.set_sample_weights(w);
  loss.set_lambdas(loss.has_ic() ? std::vector<double>{0.7, 1.6, 0.7}
                                 : std::vector<double>{0.4, 1.6});
  ApproximatorParams p = testing::random_network({spec.input_dim(), 6, 6, 1}, 4);
  // Keep the scale of the sharp benchmarks in check for the difference step.
  for (double& v : p.values) v *= 0.5;
  const ObjectiveValue ov = objective_gradient(p, loss);
  JetEvaluator ev;
  std::vector<double> fd(p.values.size());
  const double h = 1e-4;
  auto at = [&](std::size_t i, double step) {
    const double saved = p.values[i];
    p.values[i] = saved + step;
    const double v = loss_value(ev, p, loss);
    p.values[i] = saved;
    return v;
  };
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    fd[i] = (-at(i, 2 * h) + 8 * at(i, h) - 8 * at(i, -h) + at(i, -2 * h)) / (12 * h);
  }
  EXPECT_LT(rel_error(ov.gradient, fd), 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Benchmarks, LossGradient, ::testing::ValuesIn(all_problems()),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(PinnLoss, ComponentsCombineLinearly) {
  const ProblemSpec spec = make_problem(ProblemId::damped_wave);
  const PointSets sets = sample_points(spec, 40, 10, 10, 8);
  const ApproximatorParams p = testing::random_network({2, 6, 1}, 8);
  const std::vector<double> w(40, 1.0);
  const LossComponents ones = total_loss(p, spec, sets, w, std::vector<double>{1.0, 1.0, 1.0});
  EXPECT_NEAR(ones.total, ones.pde_w + ones.bc + ones.ic, 1e-12 * ones.total);
  EXPECT_EQ(ones.pde_w, ones.pde);
  const LossComponents mix = total_loss(p, spec, sets, w, std::vector<double>{0.5, 2.0, 0.25});
  EXPECT_NEAR(mix.total, 0.5 * ones.pde + 2.0 * ones.bc + 0.25 * ones.ic, 1e-12 * mix.total);
}

TEST(PinnLoss, WeightedPdeLossMatchesNaiveSum) {
  const ProblemSpec spec = make_problem(ProblemId::fisher_kpp);
  const PointSets sets = sample_points(spec, 50, 4, 4, 9);
  const ApproximatorParams p = testing::random_network({2, 7, 1}, 9);
  std::vector<double> w(50);
  double naive = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    w[i] = 0.1 + 0.03 * static_cast<double>(i);
    const double r = pde_residual(spec, eval_jet(p, sets.interior[i]), sets.interior[i]);
    naive += w[i] * r * r;
  }
  EXPECT_NEAR(weighted_pde_loss(p, spec, sets.interior, w), naive / 50.0, 1e-12 * naive);
}

TEST(PinnLoss, StationaryProblemsHaveNoInitialTerm) {
  const ProblemSpec spec = make_problem(ProblemId::poisson2d);
  PinnLoss loss(spec, sample_points(spec, 10, 8, 0, 1));
  EXPECT_FALSE(loss.has_ic());
  EXPECT_EQ(loss.component_count(), 2u);
  EXPECT_THROW(loss.set_lambdas({1.0, 1.0, 1.0}), InputError);
  EXPECT_THROW(loss.set_sample_weights({1.0}), InputError);
}

TEST(Train, RepeatRunsAreIdentical) {
  const ProblemSpec spec = make_problem(ProblemId::heat);
  TrainConfig cfg = small_config(Method::cgmpinn, OptimizerKind::adam_then_lbfgs);
  cfg.relobralo = true;
  const RunRecord a = train(spec, cfg), b = train(spec, cfg);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].loss_total, b.rows[i].loss_total);
    EXPECT_EQ(a.rows[i].lambda_pde, b.rows[i].lambda_pde);
    EXPECT_EQ(a.rows[i].grad_norm, b.rows[i].grad_norm);
  }
  EXPECT_EQ(a.params, b.params);
}

TEST(Train, LbfgsStageNeverIncreasesLoss) {
  const ProblemSpec spec = make_problem(ProblemId::poisson2d);
  TrainConfig cfg = small_config(Method::cgmpinn, OptimizerKind::adam_then_lbfgs);
  cfg.lbfgs_iters = 60;
  const RunRecord rec = train(spec, cfg);
  ASSERT_EQ(rec.summary.status, "ok");
  for (std::size_t i = cfg.adam_iters + 1; i < rec.rows.size(); ++i) {
    EXPECT_LE(rec.rows[i].loss_total, rec.rows[i - 1].loss_total) << "row " << i;
    EXPECT_EQ(rec.rows[i].lambda_pde, rec.rows[cfg.adam_iters].lambda_pde);
  }
  EXPECT_NEAR(rec.summary.metrics.e_loss, rec.rows.back().loss_total,
              1e-12 * rec.rows.back().loss_total);
}

TEST(Train, WeightedLossStaysInsideSandwich) {
  const ProblemSpec spec = make_problem(ProblemId::poisson1d);
  TrainConfig cfg = small_config(Method::cgmpinn, OptimizerKind::adam_then_lbfgs);
  const RunRecord rec = train(spec, cfg);
  const TrainConfig resolved = resolve(cfg, spec.id);
  for (const TrainRow& row : rec.rows) {
    const RefreshRow* last = nullptr;
    for (const RefreshRow& r : rec.refreshes) {
      if (r.iter <= row.iter) last = &r;
    }
    ASSERT_NE(last, nullptr);
    const auto [lo, hi] = std::minmax_element(last->gmm_variances.begin(), last->gmm_variances.end());
    const WeightBounds b = bound_constants(resolved.curriculum.beta, resolved.curriculum.eps,
                                           64, *lo, *hi);
    EXPECT_GE(row.loss_pde_w, b.c_minus * row.loss_pde_unweighted * (1 - 1e-12));
    EXPECT_LE(row.loss_pde_w, b.c_plus * row.loss_pde_unweighted * (1 + 1e-12));
  }
}

TEST(Train, RefreshCadence) {
  const ProblemSpec spec = make_problem(ProblemId::poisson1d);
  TrainConfig cfg = small_config(Method::cgmpinn, OptimizerKind::adam_then_lbfgs);
  cfg.lbfgs_iters = 5;
  std::vector<int> iters;
  for (const RefreshRow& r : train(spec, cfg).refreshes) iters.push_back(r.iter);
  EXPECT_EQ(iters, (std::vector<int>{0, 10, 20, 30, 40}));
  cfg.refresh_after_start = false;
  iters.clear();
  for (const RefreshRow& r : train(spec, cfg).refreshes) iters.push_back(r.iter);
  EXPECT_EQ(iters, std::vector<int>{0});
}

TEST(Train, RowsCoverBothStages) {
  const ProblemSpec spec = make_problem(ProblemId::poisson1d);
  TrainConfig cfg = small_config(Method::pinn, OptimizerKind::adam_then_lbfgs);
  const RunRecord rec = train(spec, cfg);
  ASSERT_GE(rec.rows.size(), 41u);
  for (std::size_t i = 0; i < rec.rows.size(); ++i) EXPECT_EQ(rec.rows[i].iter, static_cast<int>(i));
  EXPECT_EQ(rec.grid.size(), 11u);
  EXPECT_EQ(rec.summary.status, "ok");
  EXPECT_TRUE(std::isfinite(rec.summary.metrics.rel_e2));
}

TEST(Train, DivergenceIsFlagged) {
  const ProblemSpec spec = make_problem(ProblemId::poisson1d);
  TrainConfig cfg = small_config(Method::pinn, OptimizerKind::gd);
  cfg.gd_lr = 1e12;
  cfg.gd_iters = 50;
  const RunRecord rec = train(spec, cfg);
  EXPECT_EQ(rec.summary.status, "diverged");
  EXPECT_FALSE(rec.summary.message.empty());
  EXPECT_LT(rec.rows.size(), 50u);
  for (double v : rec.params.values) EXPECT_TRUE(std::isfinite(v));
}

TEST(Config, MethodsMapToVariants) {
  EXPECT_EQ(method_traits(Method::pinn).variant, WeightingVariant::uniform);
  EXPECT_FALSE(method_traits(Method::pinn).balancer);
  EXPECT_TRUE(method_traits(Method::pinn_relobralo).balancer);
  EXPECT_EQ(method_traits(Method::pinn_relobralo).variant, WeightingVariant::uniform);
  EXPECT_EQ(method_traits(Method::gmmpinn).variant, WeightingVariant::gmm_only);
  EXPECT_EQ(method_traits(Method::clpinn).variant, WeightingVariant::cl_only);
  EXPECT_EQ(method_traits(Method::cgmpinn).variant, WeightingVariant::cgm);
  for (Method m : {Method::pinn, Method::cgmpinn, Method::gmmpinn, Method::clpinn,
                   Method::pinn_relobralo}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_THROW(parse_optimizer("sgd"), ConfigError);
}

TEST(Config, ResolveFillsDefaults) {
  TrainConfig cfg;
  cfg.method = Method::pinn;
  cfg.relobralo = true;
  const TrainConfig r = resolve(cfg, ProblemId::poisson1d);
  EXPECT_EQ(r.curriculum.k_max, 7000);
  EXPECT_EQ(r.curriculum.variant, WeightingVariant::uniform);
  EXPECT_TRUE(r.balancer.enabled);
  EXPECT_EQ(r.hidden_widths, (std::vector<int>{50, 50, 50, 50}));
  EXPECT_EQ(r.n_interior, 1500);
  EXPECT_EQ(r.grid_per_axis, 200);
  cfg.optimizer = OptimizerKind::gd;
  EXPECT_EQ(resolve(cfg, ProblemId::poisson1d).curriculum.k_max, 200);

  std::map<std::string, std::string> echo;
  for (const auto& [k, v] : config_echo(r)) echo[k] = v;
  EXPECT_EQ(echo.at("method"), "pinn");
  EXPECT_EQ(echo.at("balancer.enabled"), "on");
  EXPECT_EQ(echo.at("hidden_widths"), "50,50,50,50");
}

TEST(Config, ValidationCatchesBadValues) {
  TrainConfig cfg;
  cfg.adam_lr = -1.0;
  EXPECT_THROW(resolve(cfg, ProblemId::heat).validate(), ConfigError);
  cfg = {};
  cfg.hidden_widths = {0};
  EXPECT_THROW(train(make_problem(ProblemId::heat), cfg), ConfigError);
}

}  // namespace
}  // namespace cgmpinn
