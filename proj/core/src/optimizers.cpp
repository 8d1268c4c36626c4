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

#include "cgmpinn/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>

#include "cgmpinn/errors.hpp"

namespace cgmpinn {

void adam_step(AdamState& state, std::span<double> params,
               std::span<const double> grad, double lr) {
  if (grad.size() != params.size()) throw InputError("adam_step: size mismatch");
  for (double g : grad) {
    if (!std::isfinite(g)) throw NumericalError("adam_step: non-finite gradient", g);
  }
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
    state.step = 0;
  }
  ++state.step;
  const double b1 = state.beta1, b2 = state.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = b1 * state.m[i] + (1.0 - b1) * grad[i];
    state.v[i] = b2 * state.v[i] + (1.0 - b2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + state.eps);
  }
}

void gd_step(std::span<double> params, std::span<const double> grad, double eta) {
  if (grad.size() != params.size()) throw InputError("gd_step: size mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) params[i] -= eta * grad[i];
}

void LbfgsOptions::validate() const {
  if (max_iters < 0) throw ConfigError("lbfgs iterations must be >= 0");
  if (memory < 1) throw ConfigError("lbfgs memory must be >= 1");
  if (!(wolfe_c1 > 0.0 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0)) {
    throw ConfigError("need 0 < wolfe_c1 < wolfe_c2 < 1");
  }
  if (max_line_search_evals < 1) throw ConfigError("line search needs >= 1 evaluation");
}

std::string_view to_string(LbfgsStop stop) {
  switch (stop) {
    case LbfgsStop::max_iters:
      return "max_iters";
    case LbfgsStop::converged:
      return "converged";
    case LbfgsStop::line_search_failed:
      return "line_search_failed";
  }
  return "unknown";
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

struct Probe {
  double alpha = 0.0;
  double f = 0.0;
  double dphi = 0.0;
  bool finite = true;
  std::vector<double> x;
  std::vector<double> g;
};

// Minimizer of the cubic interpolating (x1, f1, g1) and (x2, f2, g2),
// clamped to [lo, hi]; the midpoint when the cubic has no minimizer.
double cubic_min(double x1, double f1, double g1, double x2, double f2, double g2,
                 double lo, double hi) {
  const double d1 = g1 + g2 - 3.0 * (f1 - f2) / (x1 - x2);
  const double disc = d1 * d1 - g1 * g2;
  if (disc >= 0.0) {
    const double d2 = std::sqrt(disc);
    double pos;
    if (x1 <= x2) {
      pos = x2 - (x2 - x1) * ((g2 + d2 - d1) / (g2 - g1 + 2.0 * d2));
    } else {
      pos = x1 - (x1 - x2) * ((g1 + d2 - d1) / (g1 - g2 + 2.0 * d2));
    }
    if (std::isfinite(pos)) return std::min(std::max(pos, lo), hi);
  }
  return 0.5 * (lo + hi);
}

class LineSearch {
 public:
  LineSearch(const ValueAndGradient& objective, std::span<const double> x,
             std::span<const double> d, double f0, double dphi0,
             const LbfgsOptions& options)
      : objective_(objective), x_(x), d_(d), f0_(f0), dphi0_(dphi0), opt_(options) {}

  struct Outcome {
    std::optional<Probe> accepted;
    std::optional<Probe> best;  // lowest value meeting sufficient decrease
    int evaluations = 0;
  };

  Outcome run(double alpha) {
    Probe prev;
    prev.f = f0_;
    prev.dphi = dphi0_;
    for (int i = 0; evals_ < opt_.max_line_search_evals; ++i) {
      Probe cur = evaluate(alpha);
      if (!cur.finite || !armijo(cur) || (i > 0 && cur.f >= prev.f)) {
        return zoom(std::move(prev), std::move(cur));
      }
      if (std::abs(cur.dphi) <= -opt_.wolfe_c2 * dphi0_) return accept(std::move(cur));
      if (cur.dphi >= 0.0) return zoom(std::move(cur), std::move(prev));
      const double lo = alpha + 0.01 * (alpha - prev.alpha);
      const double hi = 10.0 * alpha;
      const double next = cubic_min(prev.alpha, prev.f, prev.dphi, alpha, cur.f,
                                    cur.dphi, lo, hi);
      prev = std::move(cur);
      alpha = next;
    }
    return fail();
  }

 private:
  bool armijo(const Probe& p) const {
    return p.finite && p.f <= f0_ + opt_.wolfe_c1 * p.alpha * dphi0_;
  }

  Probe evaluate(double alpha) {
    Probe p;
    p.alpha = alpha;
    p.x.resize(x_.size());
    p.g.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) p.x[i] = x_[i] + alpha * d_[i];
    ++evals_;
    try {
      p.f = objective_(p.x, p.g);
      p.finite = std::isfinite(p.f);
    } catch (const NumericalError&) {
      p.finite = false;
    }
    if (p.finite) {
      p.dphi = dot(p.g, d_);
      p.finite = std::isfinite(p.dphi);
    }
    if (!p.finite) p.f = std::numeric_limits<double>::infinity();
    if (armijo(p) && (!best_ || p.f < best_->f)) best_ = p;
    return p;
  }

  Outcome zoom(Probe lo, Probe hi) {
    const double dnorm = [&] {
      double m = 0.0;
      for (double v : d_) m = std::max(m, std::abs(v));
      return m;
    }();
    while (evals_ < opt_.max_line_search_evals) {
      const double a = std::min(lo.alpha, hi.alpha);
      const double b = std::max(lo.alpha, hi.alpha);
      const double width = b - a;
      if (width * dnorm < 1e-14) break;
      double trial;
      if (hi.finite) {
        trial = cubic_min(lo.alpha, lo.f, lo.dphi, hi.alpha, hi.f, hi.dphi, a, b);
      } else {
        trial = 0.5 * (a + b);
      }
      trial = std::min(std::max(trial, a + 0.1 * width), b - 0.1 * width);
      Probe cur = evaluate(trial);
      if (!armijo(cur) || cur.f >= lo.f) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.dphi) <= -opt_.wolfe_c2 * dphi0_) return accept(std::move(cur));
      if (cur.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = std::move(lo);
      lo = std::move(cur);
    }
    return fail();
  }

  Outcome accept(Probe p) {
    Outcome o;
    o.accepted = std::move(p);
    o.evaluations = evals_;
    return o;
  }

  Outcome fail() {
    Outcome o;
    o.best = best_;
    o.evaluations = evals_;
    return o;
  }

  const ValueAndGradient& objective_;
  std::span<const double> x_;
  std::span<const double> d_;
  double f0_;
  double dphi0_;
  const LbfgsOptions& opt_;
  int evals_ = 0;
  std::optional<Probe> best_;
};

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho = 0.0;
};

void two_loop(const std::deque<CurvaturePair>& pairs, std::span<const double> g,
              std::vector<double>& d) {
  d.assign(g.begin(), g.end());
  std::vector<double> a(pairs.size());
  for (std::size_t k = pairs.size(); k-- > 0;) {
    const CurvaturePair& p = pairs[k];
    a[k] = p.rho * dot(p.s, d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= a[k] * p.y[i];
  }
  if (!pairs.empty()) {
    const CurvaturePair& last = pairs.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : d) v *= gamma;
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const CurvaturePair& p = pairs[k];
    const double b = p.rho * dot(p.y, d);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += (a[k] - b) * p.s[i];
  }
  for (double& v : d) v = -v;
}

}  // namespace

LbfgsResult lbfgs_run(std::vector<double> x0, const ValueAndGradient& objective,
                      const LbfgsOptions& options,
                      const std::function<void(const LbfgsIteration&)>& on_iteration) {
  options.validate();
  LbfgsResult result;
  result.x = std::move(x0);
  std::vector<double> g(result.x.size());
  result.value = objective(result.x, g);
  result.evaluations = 1;
  if (!std::isfinite(result.value)) {
    throw NumericalError("lbfgs: non-finite objective at the starting point", result.value);
  }
  result.grad_norm = norm2(g);
  if (result.grad_norm < options.grad_tol) {
    result.stop = LbfgsStop::converged;
    return result;
  }

  std::deque<CurvaturePair> pairs;
  std::vector<double> d;
  for (int it = 1; it <= options.max_iters; ++it) {
    two_loop(pairs, g, d);
    double dphi0 = dot(g, d);
    bool fresh = pairs.empty();
    if (!(dphi0 < 0.0)) {
      pairs.clear();
      two_loop(pairs, g, d);
      dphi0 = dot(g, d);
      fresh = true;
    }
    const double alpha0 = fresh ? std::min(1.0, 1.0 / norm1(g)) : 1.0;

    LineSearch search(objective, result.x, d, result.value, dphi0, options);
    LineSearch::Outcome outcome = search.run(alpha0);
    result.evaluations += outcome.evaluations;

    if (!outcome.accepted) {
      // Keep the best sufficient-decrease point, re-evaluated so that the
      // objective's side results describe the returned point.
      if (outcome.best && outcome.best->f < result.value) {
        result.x = outcome.best->x;
        result.value = objective(result.x, g);
        ++result.evaluations;
        result.grad_norm = norm2(g);
        result.iterations = it;
        if (on_iteration) {
          on_iteration({it, result.value, result.grad_norm, result.evaluations});
        }
      }
      result.stop = LbfgsStop::line_search_failed;
      return result;
    }

    Probe& p = *outcome.accepted;
    CurvaturePair pair;
    pair.s.resize(result.x.size());
    pair.y.resize(result.x.size());
    for (std::size_t i = 0; i < result.x.size(); ++i) {
      pair.s[i] = p.x[i] - result.x[i];
      pair.y[i] = p.g[i] - g[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > options.curvature_eps) {
      pair.rho = 1.0 / sy;
      pairs.push_back(std::move(pair));
      if (pairs.size() > static_cast<std::size_t>(options.memory)) pairs.pop_front();
    }
    result.x = std::move(p.x);
    g = std::move(p.g);
    result.value = p.f;
    result.grad_norm = norm2(g);
    result.iterations = it;
    if (on_iteration) on_iteration({it, result.value, result.grad_norm, result.evaluations});
    if (result.grad_norm < options.grad_tol) {
      result.stop = LbfgsStop::converged;
      return result;
    }
  }
  result.stop = LbfgsStop::max_iters;
  return result;
}

}  // namespace cgmpinn
