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

#include "cgmpinn/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "cgmpinn/errors.hpp"
#include "cgmpinn/rng.hpp"

namespace cgmpinn {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative slack for "on the boundary" / "in the domain" checks.
constexpr double kGeomTol = 1e-12;

struct ProblemInfo {
  ProblemId id;
  const char* name;
};

constexpr std::array<ProblemInfo, 6> kProblems = {{
    {ProblemId::poisson1d, "poisson1d"},
    {ProblemId::poisson2d, "poisson2d"},
    {ProblemId::heat, "heat"},
    {ProblemId::damped_wave, "damped_wave"},
    {ProblemId::advdiff, "advdiff"},
    {ProblemId::fisher_kpp, "fisher_kpp"},
}};

double axis_tol(double lo, double hi) {
  return kGeomTol * std::max(1.0, hi - lo);
}

void recompute_derived(ProblemSpec& spec) {
  auto& c = spec.coeffs;
  if (spec.id == ProblemId::damped_wave) {
    const double g = c.at("gamma");
    c["c_wave"] = std::sqrt(g * g + std::pow(c.at("alpha2") * kPi, 2)) /
                  (c.at("alpha1") * kPi);
  } else if (spec.id == ProblemId::fisher_kpp) {
    const double d = c.at("D");
    const double r = c.at("r");
    if (d <= 0.0 || r <= 0.0) throw ConfigError("fisher_kpp needs D > 0 and r > 0");
    c["lambda"] = std::sqrt(r / (6.0 * d));
    c["c"] = 5.0 * std::sqrt(d * r / 6.0);
  }
}

// Derivative helpers for tanh(s x).
struct TanhJet {
  double v, d1, d2;
};
TanhJet tanh_jet(double s, double x) {
  const double th = std::tanh(s * x);
  const double sech2 = 1.0 - th * th;
  return {th, s * sech2, -2.0 * s * s * th * sech2};
}

Jet make_jet(int dim) {
  Jet j;
  j.grad.assign(static_cast<std::size_t>(dim), 0.0);
  j.hess.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  return j;
}

void set_hess(Jet& j, int a, int b, double v) {
  const std::size_t d = j.grad.size();
  j.hess[static_cast<std::size_t>(a) * d + b] = v;
  j.hess[static_cast<std::size_t>(b) * d + a] = v;
}

bool on_spatial_boundary(const ProblemSpec& spec, std::span<const double> p) {
  for (int a = 0; a < spec.spatial_dim; ++a) {
    const Interval& iv = spec.domain[a];
    const double tol = axis_tol(iv.lo, iv.hi);
    if (std::abs(p[a] - iv.lo) <= tol || std::abs(p[a] - iv.hi) <= tol) return true;
  }
  return false;
}

bool at_initial_time(const ProblemSpec& spec, std::span<const double> p) {
  return spec.time_dependent &&
         std::abs(p[spec.time_axis()]) <= axis_tol(0.0, spec.t_final);
}

}  // namespace

std::string_view to_string(ProblemId id) {
  for (const auto& info : kProblems) {
    if (info.id == id) return info.name;
  }
  return "unknown";
}

ProblemId parse_problem(std::string_view name) {
  for (const auto& info : kProblems) {
    if (name == info.name) return info.id;
  }
  throw ConfigError("unknown problem '" + std::string(name) + "'");
}

const std::array<ProblemId, 6>& all_problems() {
  static const std::array<ProblemId, 6> ids = {
      ProblemId::poisson1d, ProblemId::poisson2d,   ProblemId::heat,
      ProblemId::damped_wave, ProblemId::advdiff, ProblemId::fisher_kpp};
  return ids;
}

double ProblemSpec::coeff(const std::string& name) const {
  auto it = coeffs.find(name);
  if (it == coeffs.end()) {
    throw ConfigError("coefficient '" + name + "' is not defined for problem " +
                      std::string(to_string(id)));
  }
  return it->second;
}

ProblemSpec make_problem(ProblemId id,
                         const std::map<std::string, double>& overrides) {
  ProblemSpec spec;
  spec.id = id;
  switch (id) {
    case ProblemId::poisson1d:
      spec.domain = {{0.0, 1.0}};
      spec.coeffs = {{"alpha1", 5.0}, {"alpha2", 3.0}, {"s", 20.0}};
      break;
    case ProblemId::poisson2d:
      spec.spatial_dim = 2;
      spec.domain = {{0.0, 1.0}, {0.0, 1.0}};
      spec.coeffs = {{"beta1", 3.0}, {"beta2", 2.0}};
      break;
    case ProblemId::heat:
      spec.time_dependent = true;
      spec.t_final = 1.0;
      spec.domain = {{0.0, 1.0}};
      spec.coeffs = {{"alpha1", 1.0}, {"alpha2", 2.0}, {"s", 10.0}};
      break;
    case ProblemId::damped_wave:
      spec.time_dependent = true;
      spec.t_final = 1.0;
      spec.domain = {{0.0, 1.0}};
      spec.coeffs = {{"alpha1", 1.0}, {"alpha2", 1.0}, {"gamma", 0.1}};
      break;
    case ProblemId::advdiff:
      spec.time_dependent = true;
      spec.t_final = 1.0;
      spec.domain = {{-1.0, 1.0}};
      spec.coeffs = {{"a", 1.0}, {"nu", 1e-2}};
      break;
    case ProblemId::fisher_kpp:
      spec.time_dependent = true;
      spec.t_final = 2.0;
      spec.domain = {{-5.0, 5.0}};
      spec.coeffs = {{"D", 0.25}, {"r", 4.0}};
      break;
  }
  static const std::set<std::string> kOverridable = {
      "alpha1", "alpha2", "s", "beta1", "beta2", "gamma", "a", "nu", "D", "r"};
  for (const auto& [key, value] : overrides) {
    if (!kOverridable.count(key) || !spec.coeffs.count(key)) {
      throw ConfigError("coefficient '" + key + "' does not apply to problem " +
                        std::string(to_string(id)));
    }
    if (!std::isfinite(value)) throw ConfigError("coefficient '" + key + "' is not finite");
    spec.coeffs[key] = value;
  }
  recompute_derived(spec);
  return spec;
}

std::vector<int> BenchmarkDefaults::layer_sizes(int input_dim) const {
  std::vector<int> sizes{input_dim};
  sizes.insert(sizes.end(), hidden_widths.begin(), hidden_widths.end());
  sizes.push_back(1);
  return sizes;
}

BenchmarkDefaults benchmark_defaults(ProblemId id) {
  BenchmarkDefaults d;
  d.hidden_widths = {50, 50, 50, 50};
  d.grid_per_axis = 100;
  switch (id) {
    case ProblemId::poisson1d:
      d.n_interior = 1500;
      d.n_boundary = 2;
      d.grid_per_axis = 200;
      break;
    case ProblemId::poisson2d:
      d.n_interior = 2000;
      d.n_boundary = 250;
      break;
    case ProblemId::heat:
      d.n_interior = 1500;
      d.n_boundary = 300;
      d.n_initial = 300;
      break;
    case ProblemId::damped_wave:
      d.n_interior = 2000;
      d.n_boundary = 300;
      d.n_initial = 300;
      break;
    case ProblemId::advdiff:
      d.n_interior = 3000;
      d.n_boundary = 300;
      d.n_initial = 300;
      break;
    case ProblemId::fisher_kpp:
      d.n_interior = 8000;
      d.n_boundary = 400;
      d.n_initial = 400;
      d.hidden_widths = {80, 80, 80, 80};
      break;
  }
  return d;
}

void check_in_domain(const ProblemSpec& spec, std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(spec.input_dim())) {
    throw InputError("point has " + std::to_string(point.size()) +
                     " coordinates, problem expects " +
                     std::to_string(spec.input_dim()));
  }
  for (int a = 0; a < spec.spatial_dim; ++a) {
    const Interval& iv = spec.domain[a];
    const double tol = axis_tol(iv.lo, iv.hi);
    if (!(point[a] >= iv.lo - tol && point[a] <= iv.hi + tol)) {
      throw InputError("point outside the spatial domain");
    }
  }
  if (spec.time_dependent) {
    const double t = point[spec.time_axis()];
    const double tol = axis_tol(0.0, spec.t_final);
    if (!(t >= -tol && t <= spec.t_final + tol)) {
      throw InputError("point outside the time interval");
    }
  }
}

Jet exact_jet(const ProblemSpec& spec, std::span<const double> point) {
  check_in_domain(spec, point);
  Jet j = make_jet(spec.input_dim());
  switch (spec.id) {
    case ProblemId::poisson1d: {
      const double x = point[0];
      const double a = spec.coeff("alpha1") * kPi;
      const double b = spec.coeff("alpha2") * kPi;
      const double sa = std::sin(a * x), ca = std::cos(a * x);
      const double sb = std::sin(b * x), cb = std::cos(b * x);
      const TanhJet th = tanh_jet(spec.coeff("s"), x);
      j.value = sa * cb + th.v;
      j.grad[0] = a * ca * cb - b * sa * sb + th.d1;
      set_hess(j, 0, 0, -(a * a + b * b) * sa * cb - 2.0 * a * b * ca * sb + th.d2);
      break;
    }
    case ProblemId::poisson2d: {
      const double x = point[0], y = point[1];
      const double p = spec.coeff("beta1") * kPi;
      const double q = spec.coeff("beta2") * kPi;
      const double spx = std::sin(p * x), cpx = std::cos(p * x);
      const double sqy = std::sin(q * y), cqy = std::cos(q * y);
      const double e = std::exp(-x * x - y * y);
      j.value = spx * sqy + e;
      j.grad[0] = p * cpx * sqy - 2.0 * x * e;
      j.grad[1] = q * spx * cqy - 2.0 * y * e;
      set_hess(j, 0, 0, -p * p * spx * sqy + (4.0 * x * x - 2.0) * e);
      set_hess(j, 1, 1, -q * q * spx * sqy + (4.0 * y * y - 2.0) * e);
      set_hess(j, 0, 1, p * q * cpx * cqy + 4.0 * x * y * e);
      break;
    }
    case ProblemId::heat: {
      const double x = point[0], t = point[1];
      const double a = spec.coeff("alpha1") * kPi;
      const double b = spec.coeff("alpha2") * kPi;
      const TanhJet th = tanh_jet(spec.coeff("s"), x);
      const double g = std::sin(a * x) + th.v;
      const double g1 = a * std::cos(a * x) + th.d1;
      const double g2 = -a * a * std::sin(a * x) + th.d2;
      const double h = std::sin(b * t);
      const double h1 = b * std::cos(b * t);
      const double h2 = -b * b * h;
      j.value = g * h;
      j.grad = {g1 * h, g * h1};
      set_hess(j, 0, 0, g2 * h);
      set_hess(j, 0, 1, g1 * h1);
      set_hess(j, 1, 1, g * h2);
      break;
    }
    case ProblemId::damped_wave: {
      const double x = point[0], t = point[1];
      const double a = spec.coeff("alpha1") * kPi;
      const double w = spec.coeff("alpha2") * kPi;
      const double gam = spec.coeff("gamma");
      const double sx = std::sin(a * x);
      const double sx1 = a * std::cos(a * x);
      const double sx2 = -a * a * sx;
      const double e = std::exp(-gam * t);
      const double cw = std::cos(w * t), sw = std::sin(w * t);
      const double tv = e * cw;
      const double t1 = e * (-gam * cw - w * sw);
      const double t2 = e * ((gam * gam - w * w) * cw + 2.0 * gam * w * sw);
      j.value = sx * tv;
      j.grad = {sx1 * tv, sx * t1};
      set_hess(j, 0, 0, sx2 * tv);
      set_hess(j, 0, 1, sx1 * t1);
      set_hess(j, 1, 1, sx * t2);
      break;
    }
    case ProblemId::advdiff: {
      const double x = point[0], t = point[1];
      const double a = spec.coeff("a");
      const double k = spec.coeff("nu") * kPi * kPi;
      const double e = std::exp(-k * t);
      const double phi = kPi * (x - a * t);
      const double s = std::sin(phi), c = std::cos(phi);
      const double ap = a * kPi;
      j.value = e * s;
      j.grad = {kPi * e * c, -k * e * s - ap * e * c};
      set_hess(j, 0, 0, -kPi * kPi * e * s);
      set_hess(j, 0, 1, -k * kPi * e * c + ap * kPi * e * s);
      set_hess(j, 1, 1, (k * k - ap * ap) * e * s + 2.0 * k * ap * e * c);
      break;
    }
    case ProblemId::fisher_kpp: {
      const double x = point[0], t = point[1];
      const double lam = spec.coeff("lambda");
      const double c = spec.coeff("c");
      const double xi = x - c * t;
      const double p = 1.0 / (1.0 + std::exp(lam * xi));
      const double u1 = -2.0 * lam * p * p * (1.0 - p);
      const double u2 = 2.0 * lam * lam * p * p * (2.0 - 3.0 * p) * (1.0 - p);
      j.value = p * p;
      j.grad = {u1, -c * u1};
      set_hess(j, 0, 0, u2);
      set_hess(j, 0, 1, -c * u2);
      set_hess(j, 1, 1, c * c * u2);
      break;
    }
  }
  return j;
}

double exact_solution(const ProblemSpec& spec, std::span<const double> point) {
  return exact_jet(spec, point).value;
}

double source_and_data(const ProblemSpec& spec, std::span<const double> point,
                       DataKind kind) {
  switch (kind) {
    case DataKind::pde: {
      const Jet j = exact_jet(spec, point);
      switch (spec.id) {
        case ProblemId::poisson1d:
          return j.hessian(0, 0);
        case ProblemId::poisson2d:
          return j.hessian(0, 0) + j.hessian(1, 1);
        case ProblemId::heat:
          return j.grad[1] - j.hessian(0, 0);
        case ProblemId::damped_wave:
        case ProblemId::advdiff:
        case ProblemId::fisher_kpp:
          return 0.0;
      }
      return 0.0;
    }
    case DataKind::bc:
      check_in_domain(spec, point);
      if (!on_spatial_boundary(spec, point)) {
        throw InputError("boundary data requested at an interior point");
      }
      return exact_solution(spec, point);
    case DataKind::ic:
      check_in_domain(spec, point);
      if (!spec.time_dependent) {
        throw InputError("initial data requested for a stationary problem");
      }
      if (!at_initial_time(spec, point)) {
        throw InputError("initial data requested at t != 0");
      }
      return exact_solution(spec, point);
    case DataKind::ic_velocity:
      if (spec.id != ProblemId::damped_wave) {
        throw InputError("initial velocity only exists for damped_wave");
      }
      check_in_domain(spec, point);
      if (!at_initial_time(spec, point)) {
        throw InputError("initial velocity requested at t != 0");
      }
      return -spec.coeff("gamma") * std::sin(spec.coeff("alpha1") * kPi * point[0]);
  }
  return 0.0;
}

double PdeOperator::apply(const Jet& jet) const {
  double out = 0.0;
  for (const DerivativeTerm& term : terms) {
    double d = 0.0;
    switch (term.axes.size()) {
      case 0:
        d = jet.value;
        break;
      case 1:
        d = jet.grad[term.axes[0]];
        break;
      default:
        d = jet.hessian(term.axes[0], term.axes[1]);
        break;
    }
    out += term.coeff * d;
  }
  if (logistic_rate != 0.0) out -= logistic_rate * jet.value * (1.0 - jet.value);
  return out;
}

PdeOperator pde_operator(const ProblemSpec& spec) {
  PdeOperator op;
  const int t = spec.time_axis();
  switch (spec.id) {
    case ProblemId::poisson1d:
      op.terms = {{{0, 0}, 1.0}};
      break;
    case ProblemId::poisson2d:
      op.terms = {{{0, 0}, 1.0}, {{1, 1}, 1.0}};
      break;
    case ProblemId::heat:
      op.terms = {{{t}, 1.0}, {{0, 0}, -1.0}};
      break;
    case ProblemId::damped_wave: {
      const double c = spec.coeff("c_wave");
      op.terms = {{{t, t}, 1.0}, {{t}, 2.0 * spec.coeff("gamma")}, {{0, 0}, -c * c}};
      break;
    }
    case ProblemId::advdiff:
      op.terms = {{{t}, 1.0}, {{0}, spec.coeff("a")}, {{0, 0}, -spec.coeff("nu")}};
      break;
    case ProblemId::fisher_kpp:
      op.terms = {{{t}, 1.0}, {{0, 0}, -spec.coeff("D")}};
      op.logistic_rate = spec.coeff("r");
      break;
  }
  return op;
}

JetLayout residual_layout(const ProblemSpec& spec) {
  return JetLayout::diagonal(spec.input_dim());
}

double pde_residual(const ProblemSpec& spec, const Jet& jet,
                    std::span<const double> point) {
  if (jet.dim() != spec.input_dim()) {
    throw InputError("jet dimension does not match the problem");
  }
  return pde_operator(spec).apply(jet) - source_and_data(spec, point, DataKind::pde);
}

double bc_residual(const ProblemSpec& spec, double value,
                   std::span<const double> point) {
  if (spec.periodic()) {
    throw InputError("periodic boundaries need paired jets (periodic_bc_residual)");
  }
  return value - source_and_data(spec, point, DataKind::bc);
}

PeriodicGap periodic_bc_residual(const ProblemSpec& spec, const Jet& left,
                                 std::span<const double> left_point,
                                 const Jet& right,
                                 std::span<const double> right_point) {
  if (!spec.periodic()) throw InputError("problem has no periodic boundary");
  check_in_domain(spec, left_point);
  check_in_domain(spec, right_point);
  const Interval& iv = spec.domain[0];
  const double tol = axis_tol(iv.lo, iv.hi);
  const int t = spec.time_axis();
  if (std::abs(left_point[0] - iv.lo) > tol || std::abs(right_point[0] - iv.hi) > tol ||
      std::abs(left_point[t] - right_point[t]) > axis_tol(0.0, spec.t_final)) {
    throw InputError("periodic residual needs a (lo, t), (hi, t) point pair");
  }
  return {left.value - right.value, left.grad[0] - right.grad[0]};
}

double ic_residual(const ProblemSpec& spec, double value,
                   std::span<const double> point) {
  return value - source_and_data(spec, point, DataKind::ic);
}

double ic_velocity_residual(const ProblemSpec& spec, const Jet& jet,
                            std::span<const double> point) {
  return jet.grad[spec.time_axis()] -
         source_and_data(spec, point, DataKind::ic_velocity);
}

PointSets sample_points(const ProblemSpec& spec, int n_interior, int n_boundary,
                        int n_initial, std::uint64_t seed) {
  if (n_interior <= 0 || n_boundary <= 0 || n_initial < 0) {
    throw InputError("sample_points: counts must be positive");
  }
  const int dim = spec.input_dim();
  PointSets sets;
  sets.seed = seed;
  sets.interior = PointCloud(dim);
  sets.boundary = PointCloud(dim);
  sets.initial = PointCloud(dim);
  std::vector<double> p(static_cast<std::size_t>(dim));

  SplitMix64 rng_int(derive_seed(seed, 1));
  for (int i = 0; i < n_interior; ++i) {
    for (int a = 0; a < spec.spatial_dim; ++a) {
      const Interval& iv = spec.domain[a];
      p[a] = iv.lo + (iv.hi - iv.lo) * rng_int.uniform_open();
    }
    if (spec.time_dependent) p[spec.time_axis()] = spec.t_final * rng_int.uniform_open();
    sets.interior.push_back(p);
  }

  SplitMix64 rng_bnd(derive_seed(seed, 2));
  const int t = spec.time_axis();
  if (spec.periodic()) {
    const Interval& iv = spec.domain[0];
    for (int i = 0; i < n_boundary; ++i) {
      const double tt = spec.t_final * rng_bnd.uniform();
      p[0] = iv.lo;
      p[t] = tt;
      sets.boundary.push_back(p);
      sets.boundary_faces.push_back(0);
      p[0] = iv.hi;
      sets.boundary.push_back(p);
      sets.boundary_faces.push_back(1);
    }
  } else if (spec.spatial_dim == 1) {
    const Interval& iv = spec.domain[0];
    for (int i = 0; i < n_boundary; ++i) {
      const int side = i % 2;
      p[0] = side == 0 ? iv.lo : iv.hi;
      if (spec.time_dependent) p[t] = spec.t_final * rng_bnd.uniform();
      sets.boundary.push_back(p);
      sets.boundary_faces.push_back(side);
    }
  } else {
    const Interval& ix = spec.domain[0];
    const Interval& iy = spec.domain[1];
    const double lx = ix.hi - ix.lo, ly = iy.hi - iy.lo;
    const double perimeter = 2.0 * (lx + ly);
    for (int i = 0; i < n_boundary; ++i) {
      double s = perimeter * rng_bnd.uniform();
      int face = 0;
      if (s < ly) {
        p[0] = ix.lo, p[1] = iy.lo + s, face = 0;
      } else if ((s -= ly) < ly) {
        p[0] = ix.hi, p[1] = iy.lo + s, face = 1;
      } else if ((s -= ly) < lx) {
        p[0] = ix.lo + s, p[1] = iy.lo, face = 2;
      } else {
        s -= lx;
        p[0] = ix.lo + std::min(s, lx), p[1] = iy.hi, face = 3;
      }
      sets.boundary.push_back(p);
      sets.boundary_faces.push_back(face);
    }
  }

  if (spec.time_dependent) {
    SplitMix64 rng_ic(derive_seed(seed, 3));
    const Interval& iv = spec.domain[0];
    for (int i = 0; i < n_initial; ++i) {
      p[0] = iv.lo + (iv.hi - iv.lo) * rng_ic.uniform();
      p[t] = 0.0;
      sets.initial.push_back(p);
    }
  }
  return sets;
}

PointCloud make_test_grid(const ProblemSpec& spec, int points_per_axis) {
  if (points_per_axis < 2) throw InputError("test grid needs >= 2 points per axis");
  std::vector<Interval> axes = spec.domain;
  if (spec.time_dependent) axes.push_back({0.0, spec.t_final});
  const int dim = static_cast<int>(axes.size());
  const int m = points_per_axis;
  PointCloud grid(dim);
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(m);
  std::vector<double> p(static_cast<std::size_t>(dim));
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    for (int a = dim - 1; a >= 0; --a) {
      const std::size_t idx = rem % static_cast<std::size_t>(m);
      rem /= static_cast<std::size_t>(m);
      const Interval& iv = axes[a];
      p[a] = idx + 1 == static_cast<std::size_t>(m)
                 ? iv.hi
                 : iv.lo + (iv.hi - iv.lo) * static_cast<double>(idx) / (m - 1);
    }
    grid.push_back(p);
  }
  return grid;
}

ErrorMetrics compute_error_metrics(std::span<const double> exact,
                                   std::span<const double> predicted,
                                   double e_loss) {
  if (exact.size() != predicted.size()) {
    throw InputError("metrics: exact and predicted sizes differ");
  }
  double err2 = 0.0, ref2 = 0.0, inf = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double e = exact[i] - predicted[i];
    finite = finite && std::isfinite(e);
    err2 += e * e;
    ref2 += exact[i] * exact[i];
    inf = std::max(inf, std::abs(e));
  }
  if (!finite) inf = std::numeric_limits<double>::quiet_NaN();
  ErrorMetrics m;
  m.e_loss = e_loss;
  m.e2 = std::sqrt(err2);
  m.rel_e2 = ref2 > 0.0 ? m.e2 / std::sqrt(ref2) : m.e2;
  m.e_inf = inf;
  return m;
}

ErrorMetrics evaluate_metrics(const ApproximatorParams& params,
                              const ProblemSpec& spec, const PointCloud& grid,
                              double e_loss) {
  std::vector<double> exact(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) exact[i] = exact_solution(spec, grid[i]);
  const std::vector<double> predicted = eval_values(params, grid);
  return compute_error_metrics(exact, predicted, e_loss);
}

}  // namespace cgmpinn
