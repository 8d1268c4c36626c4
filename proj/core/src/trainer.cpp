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

#include "cgmpinn/trainer.hpp"

#include <time.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "cgmpinn/errors.hpp"
#include "cgmpinn/format.hpp"
#include "cgmpinn/optimizers.hpp"
#include "cgmpinn/rng.hpp"

namespace cgmpinn {

// --- loss --------------------------------------------------------------------

PinnLoss::PinnLoss(ProblemSpec spec, const PointSets& sets)
    : spec_(std::move(spec)), layout_(residual_layout(spec_)) {
  const int dim = spec_.input_dim();
  if (sets.interior.dim() != dim || sets.interior.empty()) {
    throw InputError("PinnLoss: interior points missing or of the wrong dimension");
  }
  if (sets.boundary.empty()) throw InputError("PinnLoss: no boundary points");
  if (spec_.periodic() && sets.boundary.size() % 2 != 0) {
    throw InputError("PinnLoss: periodic boundary points must come in pairs");
  }
  if (has_ic() && sets.initial.empty()) throw InputError("PinnLoss: no initial points");

  n_int_ = sets.interior.size();
  n_bc_ = sets.boundary.size();
  n_ic_ = has_ic() ? sets.initial.size() : 0;
  points_ = PointCloud(dim);
  points_.append(sets.interior);
  points_.append(sets.boundary);
  if (has_ic()) points_.append(sets.initial);

  const PdeOperator op = pde_operator(spec_);
  for (const DerivativeTerm& term : op.terms) {
    int channel = 0;
    if (term.axes.size() == 1) channel = layout_.grad_channel(term.axes[0]);
    if (term.axes.size() == 2) channel = layout_.second_channel(term.axes[0], term.axes[1]);
    if (channel < 0) throw InputError("PinnLoss: operator needs an unavailable derivative");
    pde_channels_.emplace_back(channel, term.coeff);
  }
  logistic_rate_ = op.logistic_rate;

  f_.resize(n_int_);
  for (std::size_t i = 0; i < n_int_; ++i) {
    f_[i] = source_and_data(spec_, sets.interior[i], DataKind::pde);
  }
  if (!spec_.periodic()) {
    g_.resize(n_bc_);
    for (std::size_t j = 0; j < n_bc_; ++j) {
      g_[j] = source_and_data(spec_, sets.boundary[j], DataKind::bc);
    }
  } else {
    // Validates the pairing once; the loss then reads jets directly.
    const Jet zero{0.0, std::vector<double>(dim, 0.0),
                   std::vector<double>(static_cast<std::size_t>(dim * dim), 0.0)};
    for (std::size_t j = 0; j < n_bc_; j += 2) {
      periodic_bc_residual(spec_, zero, sets.boundary[j], zero, sets.boundary[j + 1]);
    }
  }
  if (has_ic()) {
    u0_.resize(n_ic_);
    for (std::size_t l = 0; l < n_ic_; ++l) {
      u0_[l] = source_and_data(spec_, sets.initial[l], DataKind::ic);
    }
    if (spec_.id == ProblemId::damped_wave) {
      v0_.resize(n_ic_);
      for (std::size_t l = 0; l < n_ic_; ++l) {
        v0_[l] = source_and_data(spec_, sets.initial[l], DataKind::ic_velocity);
      }
    }
  }
  weights_.assign(n_int_, 1.0);
  lambdas_.assign(component_count(), 1.0);
  residuals_.resize(n_int_);
}

void PinnLoss::set_sample_weights(std::vector<double> weights) {
  if (weights.size() != n_int_) throw InputError("PinnLoss: weight count != interior count");
  weights_ = std::move(weights);
}

void PinnLoss::set_lambdas(std::vector<double> lambdas) {
  if (lambdas.size() != component_count()) {
    throw InputError("PinnLoss: lambda count != active component count");
  }
  lambdas_ = std::move(lambdas);
}

double PinnLoss::evaluate(const JetBatch& jets, JetBatch& adjoint) {
  const std::size_t n = jets.size;
  const double* u = jets.data.data();
  auto at = [&](int channel, std::size_t j) { return jets.data[channel * n + j]; };
  auto adj = [&](int channel, std::size_t j) -> double& {
    return adjoint.data[channel * n + j];
  };

  for (std::size_t i = 0; i < n_int_; ++i) {
    double r = -f_[i];
    for (const auto& [channel, coeff] : pde_channels_) r += coeff * at(channel, i);
    if (logistic_rate_ != 0.0) r -= logistic_rate_ * u[i] * (1.0 - u[i]);
    if (!std::isfinite(r)) {
      throw NumericalError("non-finite PDE residual at interior point " + std::to_string(i), r);
    }
    residuals_[i] = r;
  }
  if (on_residuals) on_residuals(residuals_);

  LossComponents c;
  for (std::size_t i = 0; i < n_int_; ++i) {
    const double r2 = residuals_[i] * residuals_[i];
    c.pde += r2;
    c.pde_w += weights_[i] * r2;
  }
  c.pde /= static_cast<double>(n_int_);
  c.pde_w /= static_cast<double>(n_int_);

  const std::size_t b0 = n_int_;
  const int gx = layout_.grad_channel(0);
  double bc_rows = 0.0;
  if (spec_.periodic()) {
    for (std::size_t j = 0; j < n_bc_; j += 2) {
      const double dv = u[b0 + j] - u[b0 + j + 1];
      const double dd = at(gx, b0 + j) - at(gx, b0 + j + 1);
      c.bc += dv * dv + dd * dd;
    }
    bc_rows = static_cast<double>(n_bc_);
  } else {
    for (std::size_t j = 0; j < n_bc_; ++j) {
      const double r = u[b0 + j] - g_[j];
      c.bc += r * r;
    }
    bc_rows = static_cast<double>(n_bc_);
  }
  c.bc /= bc_rows;

  const std::size_t i0 = n_int_ + n_bc_;
  const bool velocity = !v0_.empty();
  const int gt = has_ic() ? layout_.grad_channel(spec_.time_axis()) : 0;
  double ic_rows = 0.0;
  if (has_ic()) {
    for (std::size_t l = 0; l < n_ic_; ++l) {
      const double r = u[i0 + l] - u0_[l];
      c.ic += r * r;
      if (velocity) {
        const double rv = at(gt, i0 + l) - v0_[l];
        c.ic += rv * rv;
      }
    }
    ic_rows = static_cast<double>(velocity ? 2 * n_ic_ : n_ic_);
    c.ic /= ic_rows;
  }
  for (double v : {c.bc, c.ic}) {
    if (!std::isfinite(v)) throw NumericalError("non-finite boundary or initial loss", v);
  }

  if (lambda_provider) {
    std::vector<double> balanced{c.pde_w, c.bc};
    if (has_ic()) balanced.push_back(c.ic);
    set_lambdas(lambda_provider(balanced));
  }
  const double lp = lambdas_[0], lb = lambdas_[1], li = has_ic() ? lambdas_[2] : 0.0;
  c.total = lp * c.pde_w + lb * c.bc + li * c.ic;
  last_ = c;

  const double sp = 2.0 * lp / static_cast<double>(n_int_);
  for (std::size_t i = 0; i < n_int_; ++i) {
    const double a = sp * weights_[i] * residuals_[i];
    for (const auto& [channel, coeff] : pde_channels_) adj(channel, i) += a * coeff;
    if (logistic_rate_ != 0.0) adj(0, i) -= a * logistic_rate_ * (1.0 - 2.0 * u[i]);
  }
  const double sb = 2.0 * lb / bc_rows;
  if (spec_.periodic()) {
    for (std::size_t j = 0; j < n_bc_; j += 2) {
      const double dv = sb * (u[b0 + j] - u[b0 + j + 1]);
      const double dd = sb * (at(gx, b0 + j) - at(gx, b0 + j + 1));
      adj(0, b0 + j) += dv;
      adj(0, b0 + j + 1) -= dv;
      adj(gx, b0 + j) += dd;
      adj(gx, b0 + j + 1) -= dd;
    }
  } else {
    for (std::size_t j = 0; j < n_bc_; ++j) adj(0, b0 + j) += sb * (u[b0 + j] - g_[j]);
  }
  if (has_ic()) {
    const double si = 2.0 * li / ic_rows;
    for (std::size_t l = 0; l < n_ic_; ++l) {
      adj(0, i0 + l) += si * (u[i0 + l] - u0_[l]);
      if (velocity) adj(gt, i0 + l) += si * (at(gt, i0 + l) - v0_[l]);
    }
  }
  return c.total;
}

double loss_value(JetEvaluator& evaluator, const ApproximatorParams& params,
                  PinnLoss& loss) {
  const JetBatch jets = evaluator.forward(params, loss.points(), loss.layout());
  JetBatch scratch(jets.layout, jets.size);
  return loss.evaluate(jets, scratch);
}

double weighted_pde_loss(const ApproximatorParams& params, const ProblemSpec& spec,
                         const PointCloud& interior, std::span<const double> weights) {
  if (weights.size() != interior.size()) {
    throw InputError("weighted_pde_loss: weight count != interior count");
  }
  JetEvaluator evaluator;
  const JetLayout layout = residual_layout(spec);
  const JetBatch jets = evaluator.forward(params, interior, layout);
  const PdeOperator op = pde_operator(spec);
  double sum = 0.0;
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const double r = op.apply(jets.jet(i)) -
                     source_and_data(spec, interior[i], DataKind::pde);
    if (!std::isfinite(r)) {
      throw NumericalError("non-finite PDE residual at interior point " + std::to_string(i), r);
    }
    sum += weights[i] * r * r;
  }
  return sum / static_cast<double>(interior.size());
}

LossComponents total_loss(const ApproximatorParams& params, const ProblemSpec& spec,
                          const PointSets& sets, std::span<const double> weights,
                          std::span<const double> lambdas) {
  PinnLoss loss(spec, sets);
  loss.set_sample_weights({weights.begin(), weights.end()});
  loss.set_lambdas({lambdas.begin(), lambdas.end()});
  JetEvaluator evaluator;
  loss_value(evaluator, params, loss);
  return loss.last();
}

// --- configuration -----------------------------------------------------------

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::adam:
      return "adam";
    case OptimizerKind::lbfgs:
      return "lbfgs";
    case OptimizerKind::adam_then_lbfgs:
      return "adam_then_lbfgs";
    case OptimizerKind::gd:
      return "gd";
  }
  return "unknown";
}

OptimizerKind parse_optimizer(std::string_view name) {
  for (auto k : {OptimizerKind::adam, OptimizerKind::lbfgs, OptimizerKind::adam_then_lbfgs,
                 OptimizerKind::gd}) {
    if (name == to_string(k)) return k;
  }
  throw ConfigError("unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::pinn:
      return "pinn";
    case Method::cgmpinn:
      return "cgmpinn";
    case Method::gmmpinn:
      return "gmmpinn";
    case Method::clpinn:
      return "clpinn";
    case Method::pinn_relobralo:
      return "pinn_relobralo";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::pinn, Method::cgmpinn, Method::gmmpinn, Method::clpinn,
                 Method::pinn_relobralo}) {
    if (name == to_string(m)) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

MethodTraits method_traits(Method method) {
  switch (method) {
    case Method::pinn:
      return {WeightingVariant::uniform, false};
    case Method::cgmpinn:
      return {WeightingVariant::cgm, false};
    case Method::gmmpinn:
      return {WeightingVariant::gmm_only, false};
    case Method::clpinn:
      return {WeightingVariant::cl_only, false};
    case Method::pinn_relobralo:
      return {WeightingVariant::uniform, true};
  }
  return {WeightingVariant::uniform, false};
}

namespace {

bool uses_adam(OptimizerKind k) {
  return k == OptimizerKind::adam || k == OptimizerKind::adam_then_lbfgs;
}
bool uses_lbfgs(OptimizerKind k) {
  return k == OptimizerKind::lbfgs || k == OptimizerKind::adam_then_lbfgs;
}

}  // namespace

void TrainConfig::validate() const {
  if (uses_adam(optimizer) && adam_iters <= 0) throw ConfigError("adam_iters must be positive");
  if (uses_lbfgs(optimizer) && lbfgs_iters <= 0) {
    throw ConfigError("lbfgs_iters must be positive");
  }
  if (optimizer == OptimizerKind::gd && gd_iters <= 0) {
    throw ConfigError("gd_iters must be positive");
  }
  if (!(adam_lr > 0.0)) throw ConfigError("adam_lr must be > 0");
  if (!(gd_lr > 0.0)) throw ConfigError("gd_lr must be > 0");
  LbfgsOptions lb;
  lb.memory = lbfgs_memory;
  lb.wolfe_c1 = wolfe_c1;
  lb.wolfe_c2 = wolfe_c2;
  lb.validate();
  if (curriculum.k_max < 0) throw ConfigError("curriculum.k_max must be >= 0");
  CurriculumConfig c = curriculum;
  if (c.k_max == 0) c.k_max = 1;
  c.validate();
  balancer.validate();
  for (int w : hidden_widths) {
    if (w <= 0) throw ConfigError("hidden widths must be positive");
  }
  if (n_interior < 0 || n_boundary < 0 || n_initial < 0 || grid_per_axis < 0) {
    throw ConfigError("point counts must be >= 0");
  }
  if (grid_per_axis == 1) throw ConfigError("grid_per_axis must be >= 2");
}

TrainConfig resolve(const TrainConfig& config, ProblemId problem) {
  TrainConfig c = config;
  const MethodTraits traits = method_traits(c.method);
  c.curriculum.variant = traits.variant;
  c.curriculum.seed = derive_seed(c.seed, 40);
  c.balancer.enabled = c.relobralo.value_or(traits.balancer);
  if (c.curriculum.k_max == 0) {
    int total = 0;
    if (c.optimizer == OptimizerKind::gd) total = c.gd_iters;
    if (uses_adam(c.optimizer)) total += c.adam_iters;
    if (uses_lbfgs(c.optimizer)) total += c.lbfgs_iters;
    c.curriculum.k_max = std::max(total, 1);
  }
  const BenchmarkDefaults d = benchmark_defaults(problem);
  if (c.hidden_widths.empty()) c.hidden_widths = d.hidden_widths;
  if (c.n_interior == 0) c.n_interior = d.n_interior;
  if (c.n_boundary == 0) c.n_boundary = d.n_boundary;
  if (c.n_initial == 0) c.n_initial = d.n_initial;
  if (c.grid_per_axis == 0) c.grid_per_axis = d.grid_per_axis;
  return c;
}

std::vector<std::pair<std::string, std::string>> config_echo(const TrainConfig& c) {
  auto num = [](double v) { return format_real(v); };
  auto flag = [](bool b) { return std::string(b ? "on" : "off"); };
  std::string widths;
  for (std::size_t i = 0; i < c.hidden_widths.size(); ++i) {
    widths += (i ? "," : "") + std::to_string(c.hidden_widths[i]);
  }
  const CurriculumConfig& cc = c.curriculum;
  const BalancerConfig& b = c.balancer;
  return {
      {"optimizer", std::string(to_string(c.optimizer))},
      {"method", std::string(to_string(c.method))},
      {"seed", std::to_string(c.seed)},
      {"adam_iters", std::to_string(c.adam_iters)},
      {"lbfgs_iters", std::to_string(c.lbfgs_iters)},
      {"gd_iters", std::to_string(c.gd_iters)},
      {"adam_lr", num(c.adam_lr)},
      {"gd_lr", num(c.gd_lr)},
      {"lbfgs_memory", std::to_string(c.lbfgs_memory)},
      {"wolfe_c1", num(c.wolfe_c1)},
      {"wolfe_c2", num(c.wolfe_c2)},
      {"refresh_after_start", flag(c.refresh_after_start)},
      {"hidden_widths", widths},
      {"n_interior", std::to_string(c.n_interior)},
      {"n_boundary", std::to_string(c.n_boundary)},
      {"n_initial", std::to_string(c.n_initial)},
      {"grid_per_axis", std::to_string(c.grid_per_axis)},
      {"curriculum.variant", std::string(to_string(cc.variant))},
      {"curriculum.beta", num(cc.beta)},
      {"curriculum.c_sat", num(cc.c_sat)},
      {"curriculum.k_max", std::to_string(cc.k_max)},
      {"curriculum.k_upd", std::to_string(cc.k_upd)},
      {"curriculum.eps", num(cc.eps)},
      {"curriculum.k_components", std::to_string(cc.k_components)},
      {"curriculum.reg_covar", num(cc.reg_covar)},
      {"curriculum.gmm_tol", num(cc.gmm_tol)},
      {"curriculum.gmm_max_iter", std::to_string(cc.gmm_max_iter)},
      {"curriculum.seed", std::to_string(cc.seed)},
      {"balancer.enabled", flag(b.enabled)},
      {"balancer.alpha", num(b.alpha)},
      {"balancer.rho", num(b.rho)},
      {"balancer.kappa", num(b.kappa)},
      {"balancer.history", std::to_string(b.history)},
      {"balancer.eps", num(b.eps)},
  };
}

// --- training ------------------------------------------------------------------

namespace {

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

RunRecord train(const ProblemSpec& spec, const TrainConfig& config,
                const std::function<void(const TrainRow&)>& on_row) {
  const TrainConfig cfg = resolve(config, spec.id);
  cfg.validate();
  const auto wall0 = std::chrono::steady_clock::now();
  const double cpu0 = thread_cpu_seconds();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wall0)
        .count();
  };

  RunRecord rec;
  rec.spec = spec;
  rec.summary.method = std::string(to_string(cfg.method));
  rec.summary.problem = std::string(to_string(spec.id));
  rec.summary.seed = cfg.seed;
  rec.summary.config = config_echo(cfg);
  rec.summary.config.insert(rec.summary.config.begin(), {"problem", rec.summary.problem});
  for (const auto& [name, value] : spec.coeffs) {
    rec.summary.config.emplace_back("problem." + name, format_real(value));
  }

  std::vector<int> sizes{spec.input_dim()};
  sizes.insert(sizes.end(), cfg.hidden_widths.begin(), cfg.hidden_widths.end());
  sizes.push_back(1);
  ApproximatorParams params = init_network(sizes, derive_seed(cfg.seed, 10));
  const PointSets sets = sample_points(spec, cfg.n_interior, cfg.n_boundary,
                                       spec.time_dependent ? cfg.n_initial : 0,
                                       derive_seed(cfg.seed, 20));
  PinnLoss loss(spec, sets);
  BalancerState balancer(cfg.balancer, derive_seed(cfg.seed, 30));
  CurriculumState curriculum = initial_curriculum_state(loss.interior_count());
  JetEvaluator evaluator;

  int k = 0;
  bool live = true;
  loss.on_residuals = [&](std::span<const double> r) {
    if (!live) return;
    if (k != 0 && !(cfg.refresh_after_start && k % cfg.curriculum.k_upd == 0)) return;
    refresh(curriculum, r, k, cfg.curriculum);
    loss.set_sample_weights(curriculum.sample_weights);
    RefreshRow row;
    row.iter = k;
    row.tau = curriculum.tau;
    if (curriculum.model) {
      row.gmm_weights = curriculum.model->weights;
      row.gmm_means = curriculum.model->means;
      row.gmm_variances = curriculum.model->variances;
    }
    row.difficulty = curriculum.difficulty;
    row.normalized_difficulty = curriculum.normalized_difficulty;
    row.component_weights = curriculum.component_weights;
    const auto [lo, hi] = std::minmax_element(curriculum.sample_weights.begin(),
                                              curriculum.sample_weights.end());
    row.min_sample_weight = *lo;
    row.max_sample_weight = *hi;
    rec.refreshes.push_back(std::move(row));
  };
  loss.lambda_provider = [&](std::span<const double> components) {
    if (!live) return loss.lambdas();
    update_ema(balancer, components);
    return compute_lambdas(balancer, components);
  };

  auto log_row = [&](int iter, double grad_norm) {
    const LossComponents& c = loss.last();
    const std::vector<double>& lam = loss.lambdas();
    TrainRow row;
    row.iter = iter;
    row.loss_total = c.total;
    row.loss_pde_w = c.pde_w;
    row.loss_pde_unweighted = c.pde;
    row.loss_bc = c.bc;
    row.loss_ic = c.ic;
    row.lambda_pde = lam[0];
    row.lambda_bc = lam[1];
    row.lambda_ic = lam.size() > 2 ? lam[2] : 0.0;
    row.tau = curriculum.tau;
    row.grad_norm = grad_norm;
    row.wall_ms = elapsed_ms();
    rec.rows.push_back(row);
    if (on_row) on_row(row);
  };

  // Parameters of the most recent finite evaluation.
  std::vector<double> good = params.values;
  try {
    if (cfg.optimizer == OptimizerKind::gd || uses_adam(cfg.optimizer)) {
      const bool gd = cfg.optimizer == OptimizerKind::gd;
      const int iters = gd ? cfg.gd_iters : cfg.adam_iters;
      AdamState adam;
      for (k = 0; k < iters; ++k) {
        const ObjectiveValue ov = evaluator.gradient(params, loss);
        good = params.values;
        log_row(k, norm(ov.gradient));
        if (gd) {
          gd_step(params.values, ov.gradient, cfg.gd_lr);
        } else {
          adam_step(adam, params.values, ov.gradient, cfg.adam_lr);
        }
      }
    }
    if (uses_lbfgs(cfg.optimizer)) {
      // Stage start: one regular iteration's bookkeeping, then the objective
      // is frozen for the whole quasi-Newton stage.
      const int k0 = k;
      const ObjectiveValue start = evaluator.gradient(params, loss);
      good = params.values;
      log_row(k0, norm(start.gradient));
      live = false;

      LbfgsOptions options;
      options.max_iters = cfg.lbfgs_iters;
      options.memory = cfg.lbfgs_memory;
      options.wolfe_c1 = cfg.wolfe_c1;
      options.wolfe_c2 = cfg.wolfe_c2;
      const ValueAndGradient objective = [&](std::span<const double> x,
                                             std::span<double> g) {
        params.values.assign(x.begin(), x.end());
        const ObjectiveValue ov = evaluator.gradient(params, loss);
        std::copy(ov.gradient.begin(), ov.gradient.end(), g.begin());
        return ov.value;
      };
      const LbfgsResult result =
          lbfgs_run(params.values, objective, options, [&](const LbfgsIteration& it) {
            good = params.values;
            k = k0 + it.iteration;
            log_row(k, it.grad_norm);
          });
      params.values = result.x;
      good = params.values;
    }
    live = false;
  } catch (const NumericalError& e) {
    live = false;
    rec.summary.status = "diverged";
    rec.summary.message = e.what();
    params.values = good;
  }

  double e_loss = std::numeric_limits<double>::quiet_NaN();
  try {
    e_loss = loss_value(evaluator, params, loss);
  } catch (const NumericalError& e) {
    rec.summary.status = "diverged";
    if (rec.summary.message.empty()) rec.summary.message = e.what();
  }

  rec.grid = make_test_grid(spec, cfg.grid_per_axis);
  rec.grid_pred = eval_values(params, rec.grid);
  rec.grid_exact.resize(rec.grid.size());
  for (std::size_t i = 0; i < rec.grid.size(); ++i) {
    rec.grid_exact[i] = exact_solution(spec, rec.grid[i]);
  }
  rec.summary.metrics = compute_error_metrics(rec.grid_exact, rec.grid_pred, e_loss);
  rec.params = std::move(params);
  rec.summary.cpu_s = thread_cpu_seconds() - cpu0;
  rec.summary.wall_s = elapsed_ms() / 1000.0;
  return rec;
}

}  // namespace cgmpinn
