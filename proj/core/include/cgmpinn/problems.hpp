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

// The six manufactured-solution benchmarks.
//
// Input coordinates are ordered (x), (x, y) or (x, t): spatial axes first,
// time last. Every exact solution comes with hand-coded analytic first and
// second derivatives; sources and boundary/initial data are derived from
// those, never from numerical differentiation.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cgmpinn/approximator.hpp"
#include "cgmpinn/points.hpp"

namespace cgmpinn {

enum class ProblemId { poisson1d, poisson2d, heat, damped_wave, advdiff, fisher_kpp };

std::string_view to_string(ProblemId id);
ProblemId parse_problem(std::string_view name);
const std::array<ProblemId, 6>& all_problems();

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct ProblemSpec {
  ProblemId id = ProblemId::poisson1d;
  int spatial_dim = 1;
  bool time_dependent = false;
  std::vector<Interval> domain;  // one per spatial axis
  double t_final = 0.0;
  std::map<std::string, double> coeffs;

  int input_dim() const { return spatial_dim + (time_dependent ? 1 : 0); }
  int time_axis() const { return time_dependent ? spatial_dim : -1; }
  bool periodic() const { return id == ProblemId::advdiff; }
  /// Throws ConfigError if the coefficient is not defined for this problem.
  double coeff(const std::string& name) const;
};

/// Default benchmark with optional coefficient overrides. Overridable keys:
/// alpha1, alpha2, s, beta1, beta2, gamma, a, nu, D, r (only those the
/// problem uses). Derived coefficients (damped wave c_wave, Fisher-KPP
/// lambda and c) are recomputed from the overridden values.
ProblemSpec make_problem(ProblemId id,
                         const std::map<std::string, double>& overrides = {});

/// Collocation counts, hidden widths and test-grid resolution per benchmark.
struct BenchmarkDefaults {
  int n_interior = 0;
  int n_boundary = 0;
  int n_initial = 0;
  std::vector<int> hidden_widths;
  int grid_per_axis = 0;

  std::vector<int> layer_sizes(int input_dim) const;
};
BenchmarkDefaults benchmark_defaults(ProblemId id);

// --- exact solution and data -------------------------------------------------

/// Throws InputError if the point lies outside the closed space-time box.
void check_in_domain(const ProblemSpec& spec, std::span<const double> point);

/// Closed-form u at a point.
double exact_solution(const ProblemSpec& spec, std::span<const double> point);

/// Closed-form u with analytic gradient and full Hessian.
Jet exact_jet(const ProblemSpec& spec, std::span<const double> point);

enum class DataKind { pde, bc, ic, ic_velocity };

/// f, g, u0 or v0 at a point. bc points must lie on the spatial boundary and
/// ic points at t = 0; ic_velocity exists only for the damped wave.
double source_and_data(const ProblemSpec& spec, std::span<const double> point,
                       DataKind kind);

// --- residual operators ------------------------------------------------------

/// coeff * d^|axes| u / dx_axes ; axes empty means the value itself.
struct DerivativeTerm {
  std::vector<int> axes;
  double coeff = 0.0;
};

/// D[u] = sum of derivative terms - logistic_rate * u * (1 - u).
struct PdeOperator {
  std::vector<DerivativeTerm> terms;
  double logistic_rate = 0.0;

  double apply(const Jet& jet) const;
};

PdeOperator pde_operator(const ProblemSpec& spec);

/// Jet channels a residual evaluation needs (value, gradient, pure second
/// derivatives).
JetLayout residual_layout(const ProblemSpec& spec);

double pde_residual(const ProblemSpec& spec, const Jet& jet,
                    std::span<const double> point);

/// Dirichlet mismatch u_hat - g.
double bc_residual(const ProblemSpec& spec, double value,
                   std::span<const double> point);

struct PeriodicGap {
  double value_gap = 0.0;       // u(lo, t) - u(hi, t)
  double derivative_gap = 0.0;  // u_x(lo, t) - u_x(hi, t)
};

/// Periodic mismatch between a left-face jet and a right-face jet sharing t.
PeriodicGap periodic_bc_residual(const ProblemSpec& spec, const Jet& left,
                                 std::span<const double> left_point,
                                 const Jet& right,
                                 std::span<const double> right_point);

/// u_hat(x, 0) - u0(x).
double ic_residual(const ProblemSpec& spec, double value,
                   std::span<const double> point);

/// u_hat_t(x, 0) - v0(x); damped wave only.
double ic_velocity_residual(const ProblemSpec& spec, const Jet& jet,
                            std::span<const double> point);

// --- sampling ----------------------------------------------------------------

struct PointSets {
  PointCloud interior;
  /// For periodic problems, consecutive (left, right) pairs sharing t.
  PointCloud boundary;
  /// Face tag per boundary point: 2 * axis + (0 for lo, 1 for hi).
  std::vector<int> boundary_faces;
  PointCloud initial;
  std::uint64_t seed = 0;

  bool operator==(const PointSets&) const = default;
};

/// Interior points i.i.d. uniform over the open space-time box (t in (0, T)).
/// Boundary points: 1-D domains alternate between the two endpoints (t
/// uniform on [0, T]); 2-D domains are uniform over the perimeter; periodic
/// problems draw n_boundary times, each giving a (lo, t), (hi, t) pair.
/// Initial points are uniform in x at t = 0 (none for stationary problems).
PointSets sample_points(const ProblemSpec& spec, int n_interior, int n_boundary,
                        int n_initial, std::uint64_t seed);

// --- metrics -----------------------------------------------------------------

/// Uniform tensor grid including the endpoints of every axis, last axis
/// varying fastest.
PointCloud make_test_grid(const ProblemSpec& spec, int points_per_axis);

struct ErrorMetrics {
  double e_loss = 0.0;
  double e2 = 0.0;
  double rel_e2 = 0.0;
  double e_inf = 0.0;
};

ErrorMetrics compute_error_metrics(std::span<const double> exact,
                                   std::span<const double> predicted,
                                   double e_loss);

ErrorMetrics evaluate_metrics(const ApproximatorParams& params,
                              const ProblemSpec& spec, const PointCloud& grid,
                              double e_loss = 0.0);

}  // namespace cgmpinn
