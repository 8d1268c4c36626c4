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

#include "cgmpinn_cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>

#include "cgmpinn/approximator.hpp"
#include "cgmpinn/balancing.hpp"
#include "cgmpinn/curriculum.hpp"
#include "cgmpinn/gmm.hpp"
#include "cgmpinn/problems.hpp"
#include "cgmpinn/rng.hpp"
#include "cgmpinn/trainer.hpp"
#include "cgmpinn_cli/config.hpp"

namespace cgmpinn::cli {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

double rel_error(std::span<const double> a, std::span<const double> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

double gaussian(SplitMix64& rng) {
  const double u1 = rng.uniform_open(), u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ApproximatorParams random_network(std::vector<int> sizes, std::uint64_t seed) {
  ApproximatorParams p = init_network(sizes, seed);
  SplitMix64 rng(derive_seed(seed, 99));
  for (double& v : p.values) v += 0.1 * rng.uniform(-1.0, 1.0);  // nonzero biases
  return p;
}

// --- gradients -----------------------------------------------------------------

std::vector<CheckResult> gradients_suite() {
  std::vector<CheckResult> out;
  const double h = 1e-5;
  for (int dim : {1, 2}) {
    double worst_grad = 0.0, worst_hess = 0.0;
    for (int c = 0; c < 100; ++c) {
      const std::uint64_t seed = derive_seed(1000 + dim, c);
      const ApproximatorParams p = random_network({dim, 20, 20, 1}, seed);
      SplitMix64 rng(seed);
      std::vector<double> x(dim);
      for (double& v : x) v = rng.uniform(-1.0, 1.0);
      const Jet jet = eval_jet(p, x);
      std::vector<double> fd_grad(dim), fd_hess(dim * dim);
      for (int a = 0; a < dim; ++a) {
        std::vector<double> xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        PointCloud pts(dim);
        pts.push_back(xp);
        pts.push_back(xm);
        const std::vector<double> u = eval_values(p, pts);
        fd_grad[a] = (u[0] - u[1]) / (2.0 * h);
        const Jet jp = eval_jet(p, xp), jm = eval_jet(p, xm);
        for (int b = 0; b < dim; ++b) fd_hess[a * dim + b] = (jp.grad[b] - jm.grad[b]) / (2.0 * h);
      }
      worst_grad = std::max(worst_grad, rel_error(jet.grad, fd_grad));
      worst_hess = std::max(worst_hess, rel_error(jet.hess, fd_hess));
    }
    const std::string tag = "input dim " + std::to_string(dim);
    out.push_back(check("jet gradient vs finite differences, " + tag, worst_grad < 1e-5,
                        "max rel err " + sci(worst_grad) + " over 100 cases"));
    out.push_back(check("jet hessian vs finite differences, " + tag, worst_hess < 1e-5,
                        "max rel err " + sci(worst_hess) + " over 100 cases"));
  }

  for (ProblemId id : all_problems()) {
    const ProblemSpec spec = make_problem(id);
    const PointSets sets = sample_points(spec, 20, 4, 6, 7);
    PinnLoss loss(spec, sets);
    SplitMix64 rng(derive_seed(55, static_cast<std::uint64_t>(id)));
    std::vector<double> w(loss.interior_count());
    for (double& v : w) v = rng.uniform(0.2, 2.0);
    loss.set_sample_weights(w);
    std::vector<double> lam{1.3, 0.7, 1.1};
    lam.resize(loss.component_count());
    loss.set_lambdas(lam);
    ApproximatorParams p = random_network({spec.input_dim(), 8, 8, 1}, 31);
    JetEvaluator ev;
    const ObjectiveValue ov = ev.gradient(p, loss);
    std::vector<double> fd(p.values.size());
    const double hp = 1e-6;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      const double saved = p.values[i];
      p.values[i] = saved + hp;
      const double up = loss_value(ev, p, loss);
      p.values[i] = saved - hp;
      const double dn = loss_value(ev, p, loss);
      p.values[i] = saved;
      fd[i] = (up - dn) / (2.0 * hp);
    }
    const double err = rel_error(ov.gradient, fd);
    out.push_back(check("total loss gradient vs finite differences, " +
                            std::string(to_string(id)),
                        err < 1e-4, "rel err " + sci(err)));
  }
  return out;
}

// --- gmm -----------------------------------------------------------------------

std::vector<CheckResult> gmm_suite() {
  std::vector<CheckResult> out;
  SplitMix64 rng(2024);

  std::vector<double> mix;
  for (int i = 0; i < 600; ++i) mix.push_back(-2.0 + 0.5 * gaussian(rng));
  for (int i = 0; i < 300; ++i) mix.push_back(1.0 + 0.3 * gaussian(rng));
  for (int i = 0; i < 100; ++i) mix.push_back(4.0 + 1.5 * gaussian(rng));
  GmmFitOptions opt;
  opt.k = 3;
  opt.tol = 1e-12;
  opt.max_iter = 300;
  GmmFitTrace trace;
  const GmmModel model = fit_gmm(mix, opt, &trace);
  double worst_drop = 0.0;
  const double n = static_cast<double>(mix.size());
  for (std::size_t t = 1; t < trace.log_likelihood.size(); ++t) {
    worst_drop = std::max(worst_drop,
                          (trace.log_likelihood[t - 1] - trace.log_likelihood[t]) / n);
  }
  out.push_back(check("EM log-likelihood monotone", worst_drop <= 1e-10,
                      std::to_string(trace.log_likelihood.size()) +
                          " evaluations, worst per-sample drop " + sci(worst_drop)));

  const Responsibilities g = responsibilities(model, mix);
  double worst_row = 0.0, min_entry = 1.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    double s = 0.0;
    for (int m = 0; m < g.k; ++m) {
      s += g(i, m);
      min_entry = std::min(min_entry, g(i, m));
    }
    worst_row = std::max(worst_row, std::abs(s - 1.0));
  }
  out.push_back(check("responsibilities row-stochastic", worst_row < 1e-12 && min_entry >= 0.0,
                      "max |row sum - 1| " + sci(worst_row)));

  double mean = 0.0;
  for (double r : mix) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : mix) var += (r - mean) * (r - mean);
  var /= n;
  GmmFitOptions one;
  one.k = 1;
  const GmmModel single = fit_gmm(mix, one);
  const double dm = std::abs(single.means[0] - mean);
  const double dv = std::abs(single.variances[0] - var) / var;
  out.push_back(check("K=1 equals sample mean and variance",
                      dm < 1e-12 && dv < 1e-12 && single.weights[0] == 1.0,
                      "|dmu| " + sci(dm) + ", rel |dvar| " + sci(dv)));

  std::vector<double> two;
  for (int i = 0; i < 1000; ++i) two.push_back(-5.0 + gaussian(rng));
  for (int i = 0; i < 1000; ++i) two.push_back(5.0 + gaussian(rng));
  GmmFitOptions k2;
  k2.k = 2;
  const GmmModel fit2 = fit_gmm(two, k2);
  const int lo = fit2.means[0] < fit2.means[1] ? 0 : 1;
  const double em = std::max(std::abs(fit2.means[lo] + 5.0), std::abs(fit2.means[1 - lo] - 5.0));
  const double ew = std::max(std::abs(fit2.weights[0] - 0.5), std::abs(fit2.weights[1] - 0.5));
  out.push_back(check("two-cluster recovery", em < 0.05 && ew < 0.02,
                      "mean err " + sci(em) + ", weight err " + sci(ew)));

  GmmModel std_normal{{1.0}, {0.0}, {1.0}, 1e-6};
  const double ll0 = log_likelihood(std_normal, std::vector<double>{0.0});
  out.push_back(check("standard normal log-density at 0",
                      std::abs(ll0 + 0.5 * std::log(2.0 * std::numbers::pi)) < 1e-12, "value " + sci(ll0)));
  return out;
}

// --- bounds --------------------------------------------------------------------

std::vector<CheckResult> bounds_suite() {
  std::vector<CheckResult> out;
  SplitMix64 rng(77);
  const double slack = 1e-9;
  int weight_failures = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 5 + rng.below(400);
    const int k = 1 + static_cast<int>(rng.below(6));
    CurriculumConfig cfg;
    cfg.beta = rng.uniform(0.1, 6.0);
    const double tau = rng.uniform();
    GmmModel model;
    model.reg_covar = 1e-6;
    double wsum = 0.0;
    for (int m = 0; m < k; ++m) {
      model.weights.push_back(rng.uniform(0.05, 1.0));
      wsum += model.weights.back();
      model.means.push_back(rng.uniform(-3.0, 3.0));
      model.variances.push_back(std::pow(10.0, rng.uniform(-6.0, 2.0)));
    }
    for (double& w : model.weights) w /= wsum;
    std::vector<double> r(n);
    const double scale = std::pow(10.0, rng.uniform(-4.0, 2.0));
    for (double& v : r) {
      const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
      v = scale * (model.means[m] + std::sqrt(model.variances[m]) * gaussian(rng));
    }
    if (trial % 4 == 0 && n >= static_cast<std::size_t>(k)) {
      GmmFitOptions fo;
      fo.k = k;
      fo.seed = static_cast<std::uint64_t>(trial);
      model = fit_gmm(r, fo);
    }
    const Responsibilities g = responsibilities(model, r);
    const auto d = normalize_difficulty(component_difficulty(r, g, cfg.eps), cfg.eps);
    const auto wc = curriculum_component_weights(d, model.variances, tau, cfg);
    const auto w = sample_weights(g, wc, tau, cfg, r);
    const WeightBounds b =
        bound_constants(cfg.beta, cfg.eps, n, model.min_variance(), model.max_variance());
    bool ok = true;
    for (double wi : w) {
      worst = std::max({worst, b.c_minus - wi, wi - b.c_plus});
      if (wi < b.c_minus - slack || wi > b.c_plus + slack) ok = false;
    }
    if (!ok) ++weight_failures;
  }
  out.push_back(check("sample weights within [c-, c+] on 1000 fuzzed instances",
                      weight_failures == 0,
                      std::to_string(weight_failures) + " failing instances, worst excess " +
                          sci(worst)));

  int sandwich_failures = 0;
  for (int net = 0; net < 100; ++net) {
    const ProblemId id = all_problems()[net % 6];
    const ProblemSpec spec = make_problem(id);
    const PointSets sets = sample_points(spec, 200, 8, 8, derive_seed(300, net));
    const ApproximatorParams p = random_network({spec.input_dim(), 16, 16, 1}, derive_seed(301, net));
    CurriculumConfig cfg;
    cfg.k_max = 1000;
    cfg.beta = 0.5 + 0.05 * net;
    cfg.seed = static_cast<std::uint64_t>(net);
    PinnLoss loss(spec, sets);
    JetEvaluator ev;
    loss_value(ev, p, loss);
    CurriculumState state = initial_curriculum_state(loss.interior_count());
    refresh(state, loss.last_residuals(), (net * 37) % 1000, cfg);
    const double lw = weighted_pde_loss(p, spec, sets.interior, state.sample_weights);
    const std::vector<double> ones(loss.interior_count(), 1.0);
    const double l = weighted_pde_loss(p, spec, sets.interior, ones);
    const WeightBounds b = bound_constants(cfg.beta, cfg.eps, loss.interior_count(),
                                           state.model->min_variance(),
                                           state.model->max_variance());
    if (!(b.c_minus * l <= lw * (1.0 + 1e-12) && lw <= b.c_plus * l * (1.0 + 1e-12))) {
      ++sandwich_failures;
    }
  }
  out.push_back(check("c- L_pde <= L_pde^w <= c+ L_pde on 100 random networks",
                      sandwich_failures == 0,
                      std::to_string(sandwich_failures) + " failing networks"));
  return out;
}

// --- descent -------------------------------------------------------------------

std::vector<CheckResult> descent_suite() {
  std::vector<CheckResult> out;
  TrainConfig cfg;
  cfg.optimizer = OptimizerKind::gd;
  cfg.method = Method::cgmpinn;
  cfg.gd_iters = 200;
  cfg.gd_lr = 1e-4;
  cfg.refresh_after_start = false;
  cfg.seed = 0;
  const RunRecord rec = train(make_problem(ProblemId::poisson1d), cfg);
  double worst_rise = -INFINITY;
  for (std::size_t i = 1; i < rec.rows.size(); ++i) {
    worst_rise = std::max(worst_rise, rec.rows[i].loss_total - rec.rows[i - 1].loss_total);
  }
  out.push_back(check("gd loss_total non-increasing over 200 steps",
                      rec.rows.size() == 200 && worst_rise <= 1e-12,
                      "largest step change " + sci(worst_rise) + ", first " +
                          sci(rec.rows.front().loss_total) + ", last " +
                          sci(rec.rows.back().loss_total)));
  double prefix_min = rec.rows.front().grad_norm;
  for (const TrainRow& r : rec.rows) prefix_min = std::min(prefix_min, r.grad_norm);
  out.push_back(check("gd prefix-min gradient norm decreases",
                      prefix_min < rec.rows.front().grad_norm,
                      "first " + sci(rec.rows.front().grad_norm) + ", min " + sci(prefix_min)));
  return out;
}

// --- manufactured ----------------------------------------------------------------

std::vector<CheckResult> manufactured_suite() {
  std::vector<CheckResult> out;
  for (ProblemId id : all_problems()) {
    const ProblemSpec spec = make_problem(id);
    const PointSets sets = sample_points(spec, 1000, 1000, 1000, 11);
    double pde = 0.0, bc = 0.0, ic = 0.0;
    for (std::size_t i = 0; i < sets.interior.size(); ++i) {
      pde = std::max(pde, std::abs(pde_residual(spec, exact_jet(spec, sets.interior[i]),
                                                sets.interior[i])));
    }
    if (spec.periodic()) {
      for (std::size_t j = 0; j + 1 < sets.boundary.size(); j += 2) {
        const auto gap = periodic_bc_residual(
            spec, exact_jet(spec, sets.boundary[j]), sets.boundary[j],
            exact_jet(spec, sets.boundary[j + 1]), sets.boundary[j + 1]);
        bc = std::max({bc, std::abs(gap.value_gap), std::abs(gap.derivative_gap)});
      }
    } else {
      for (std::size_t j = 0; j < sets.boundary.size(); ++j) {
        bc = std::max(bc, std::abs(bc_residual(spec, exact_solution(spec, sets.boundary[j]),
                                               sets.boundary[j])));
      }
    }
    for (std::size_t l = 0; l < sets.initial.size(); ++l) {
      const Jet jet = exact_jet(spec, sets.initial[l]);
      ic = std::max(ic, std::abs(ic_residual(spec, jet.value, sets.initial[l])));
      if (id == ProblemId::damped_wave) {
        ic = std::max(ic, std::abs(ic_velocity_residual(spec, jet, sets.initial[l])));
      }
    }
    const double worst = std::max({pde, bc, ic});
    out.push_back(check("exact solution residuals, " + std::string(to_string(id)),
                        worst < 1e-8,
                        "max |pde| " + sci(pde) + ", |bc| " + sci(bc) + ", |ic| " + sci(ic)));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gradients", "gmm", "bounds", "descent",
                                                 "manufactured"};
  return names;
}

std::vector<CheckResult> run_suite(std::string_view suite) {
  if (suite == "gradients") return gradients_suite();
  if (suite == "gmm") return gmm_suite();
  if (suite == "bounds") return bounds_suite();
  if (suite == "descent") return descent_suite();
  if (suite == "manufactured") return manufactured_suite();
  throw UsageError("verify", "unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace cgmpinn::cli
