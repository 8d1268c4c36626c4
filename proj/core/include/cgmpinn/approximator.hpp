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

// Smooth fully-connected approximator u(x; theta) with exact input
// derivatives up to second order and exact parameter gradients.
//
// Parameter layout (flat, layer-major): for each layer l mapping width
// n_l to n_{l+1}, the weight matrix W_l (n_{l+1} x n_l) row-major, followed
// by the bias vector b_l (n_{l+1}). Hidden layers apply the activation; the
// output layer is affine.
//
// Derivatives are carried forward as jets: every hidden unit propagates its
// value, its first input-derivatives and the requested second
// input-derivatives. Parameter gradients are obtained by a reverse sweep
// through that jet propagation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cgmpinn/points.hpp"

namespace cgmpinn {

enum class Activation { tanh };

std::string_view to_string(Activation activation);
Activation parse_activation(std::string_view name);

struct ApproximatorParams {
  std::vector<int> layer_sizes;
  std::vector<double> values;
  Activation activation = Activation::tanh;

  int input_dim() const { return layer_sizes.front(); }
  int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }

  bool operator==(const ApproximatorParams&) const = default;
};

/// Number of parameters of a network with the given widths.
std::size_t parameter_count(std::span<const int> layer_sizes);

/// Throws ConfigError unless sizes has length >= 2, all entries positive and
/// output width 1.
void validate_layer_sizes(std::span<const int> layer_sizes);

/// Throws ConfigError if the layout or the value count is inconsistent.
void validate(const ApproximatorParams& params);

/// Glorot-uniform weights, U(-a, a) with a = sqrt(6 / (fan_in + fan_out)),
/// drawn layer by layer in flat-layout order from SplitMix64(seed). Biases
/// are zero.
ApproximatorParams init_network(std::span<const int> layer_sizes,
                                std::uint64_t seed);

/// Value, gradient and Hessian of u at one point.
struct Jet {
  double value = 0.0;
  std::vector<double> grad;
  std::vector<double> hess;  // dim x dim, row-major, symmetric

  int dim() const { return static_cast<int>(grad.size()); }
  double hessian(int i, int j) const {
    return hess[static_cast<std::size_t>(i) * grad.size() +
                static_cast<std::size_t>(j)];
  }
};

/// Channels carried by a batched jet evaluation: channel 0 is the value,
/// channels 1..d the first derivatives (when enabled), then one channel per
/// requested second-derivative pair (i <= j).
struct JetLayout {
  int input_dim = 1;
  bool first_order = false;
  std::vector<std::pair<int, int>> second_order;

  int channels() const {
    return 1 + (first_order ? input_dim : 0) +
           static_cast<int>(second_order.size());
  }
  int grad_channel(int axis) const { return 1 + axis; }
  int pair_channel(std::size_t pair) const {
    return 1 + input_dim + static_cast<int>(pair);
  }
  /// Channel of d2u/dx_i dx_j, or -1 if not carried.
  int second_channel(int i, int j) const;

  static JetLayout value_only(int dim);
  static JetLayout first(int dim);
  /// Value, gradient and the pure second derivatives d2u/dx_i^2.
  static JetLayout diagonal(int dim);
  /// Value, gradient and every second derivative (upper triangle).
  static JetLayout full(int dim);

  void check() const;
};

/// Jets of many points, channel-major: entry (channel c, point j) lives at
/// data[c * size + j].
struct JetBatch {
  JetLayout layout;
  std::size_t size = 0;
  std::vector<double> data;

  JetBatch() = default;
  JetBatch(JetLayout l, std::size_t n)
      : layout(std::move(l)),
        size(n),
        data(static_cast<std::size_t>(layout.channels()) * n, 0.0) {}

  std::span<const double> channel(int c) const {
    return {data.data() + static_cast<std::size_t>(c) * size, size};
  }
  std::span<double> channel(int c) {
    return {data.data() + static_cast<std::size_t>(c) * size, size};
  }
  double value(std::size_t j) const { return data[j]; }
  double grad(int axis, std::size_t j) const {
    return data[static_cast<std::size_t>(layout.grad_channel(axis)) * size + j];
  }
  double second(int i, int j, std::size_t point) const;

  /// Extracts one point as a Jet. Entries not carried by the layout are 0.
  Jet jet(std::size_t point) const;
};

/// A scalar objective built from network jets at a fixed set of points,
/// optionally plus an explicit term in the raw parameters.
class JetObjective {
 public:
  virtual ~JetObjective() = default;

  virtual const PointCloud& points() const = 0;
  virtual const JetLayout& layout() const = 0;

  /// Returns the objective given the jets at points() and writes the partial
  /// derivative of the objective with respect to every jet entry into
  /// `adjoint` (same shape as `jets`, zero-initialized by the caller).
  virtual double evaluate(const JetBatch& jets, JetBatch& adjoint) = 0;

  /// Explicit parameter dependence; adds its gradient into `grad`.
  virtual double parameter_term(std::span<const double> /*values*/,
                                std::span<double> /*grad*/) {
    return 0.0;
  }
};

struct ObjectiveValue {
  double value = 0.0;
  std::vector<double> gradient;
};

/// Reusable evaluation workspace. Not thread-safe; use one per worker.
///
/// Point reductions (bias and weight gradients) happen inside dense
/// matrix products over the point axis, in a fixed blocked order for a
/// given build, so repeated calls are bit-identical.
class JetEvaluator {
 public:
  JetEvaluator();
  ~JetEvaluator();
  JetEvaluator(JetEvaluator&&) noexcept;
  JetEvaluator& operator=(JetEvaluator&&) noexcept;

  /// Forward jets at every point.
  JetBatch forward(const ApproximatorParams& params, const PointCloud& points,
                   const JetLayout& layout);

  /// Objective value and its exact gradient in flat-layout order. Throws
  /// NumericalError when the value or a gradient entry is not finite.
  ObjectiveValue gradient(const ApproximatorParams& params,
                          JetObjective& objective);

  struct Workspace;

 private:
  std::unique_ptr<Workspace> ws_;
};

/// Value, gradient and full Hessian at a single point.
Jet eval_jet(const ApproximatorParams& params, std::span<const double> point);

/// Network values only, at many points.
std::vector<double> eval_values(const ApproximatorParams& params,
                                const PointCloud& points);

ObjectiveValue objective_gradient(const ApproximatorParams& params,
                                  JetObjective& objective);

}  // namespace cgmpinn
