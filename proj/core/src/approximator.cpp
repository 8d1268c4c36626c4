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

#include "cgmpinn/approximator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "cgmpinn/errors.hpp"
#include "cgmpinn/rng.hpp"

namespace cgmpinn {

namespace {

using Matrix = Eigen::MatrixXd;
using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct LayerView {
  int in = 0;
  int out = 0;
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;
};

std::vector<LayerView> layer_views(std::span<const int> sizes) {
  std::vector<LayerView> views;
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    LayerView v;
    v.in = sizes[l];
    v.out = sizes[l + 1];
    v.weight_offset = offset;
    v.bias_offset = offset + static_cast<std::size_t>(v.in) * v.out;
    offset = v.bias_offset + static_cast<std::size_t>(v.out);
    views.push_back(v);
  }
  return views;
}

}  // namespace

std::string_view to_string(Activation activation) {
  switch (activation) {
    case Activation::tanh:
      return "tanh";
  }
  return "unknown";
}

Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::tanh;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

std::size_t parameter_count(std::span<const int> layer_sizes) {
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    count += static_cast<std::size_t>(layer_sizes[l]) * layer_sizes[l + 1] +
             static_cast<std::size_t>(layer_sizes[l + 1]);
  }
  return count;
}

void validate_layer_sizes(std::span<const int> layer_sizes) {
  if (layer_sizes.size() < 2) {
    throw ConfigError("layer_sizes needs at least an input and an output width");
  }
  for (int width : layer_sizes) {
    if (width <= 0) throw ConfigError("layer widths must be positive");
  }
  if (layer_sizes.back() != 1) throw ConfigError("output width must be 1");
}

void validate(const ApproximatorParams& params) {
  validate_layer_sizes(params.layer_sizes);
  if (params.values.size() != parameter_count(params.layer_sizes)) {
    throw ConfigError("parameter count " + std::to_string(params.values.size()) +
                      " does not match layer sizes (expected " +
                      std::to_string(parameter_count(params.layer_sizes)) + ")");
  }
}

ApproximatorParams init_network(std::span<const int> layer_sizes,
                                std::uint64_t seed) {
  validate_layer_sizes(layer_sizes);
  ApproximatorParams params;
  params.layer_sizes.assign(layer_sizes.begin(), layer_sizes.end());
  params.values.assign(parameter_count(layer_sizes), 0.0);
  SplitMix64 rng(seed);
  for (const LayerView& v : layer_views(layer_sizes)) {
    const double limit = std::sqrt(6.0 / static_cast<double>(v.in + v.out));
    const std::size_t n = static_cast<std::size_t>(v.in) * v.out;
    for (std::size_t k = 0; k < n; ++k) {
      params.values[v.weight_offset + k] = rng.uniform(-limit, limit);
    }
  }
  return params;
}

// ---------------------------------------------------------------------------
// Jet layouts and batches

int JetLayout::second_channel(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (std::size_t p = 0; p < second_order.size(); ++p) {
    if (second_order[p].first == i && second_order[p].second == j) {
      return pair_channel(p);
    }
  }
  return -1;
}

JetLayout JetLayout::value_only(int dim) {
  JetLayout l;
  l.input_dim = dim;
  return l;
}

JetLayout JetLayout::first(int dim) {
  JetLayout l = value_only(dim);
  l.first_order = true;
  return l;
}

JetLayout JetLayout::diagonal(int dim) {
  JetLayout l = first(dim);
  for (int i = 0; i < dim; ++i) l.second_order.emplace_back(i, i);
  return l;
}

JetLayout JetLayout::full(int dim) {
  JetLayout l = first(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) l.second_order.emplace_back(i, j);
  }
  return l;
}

void JetLayout::check() const {
  if (input_dim <= 0) throw InputError("JetLayout: input_dim must be positive");
  if (!second_order.empty() && !first_order) {
    throw InputError("JetLayout: second-order channels require first order");
  }
  for (auto [i, j] : second_order) {
    if (i < 0 || j < i || j >= input_dim) {
      throw InputError("JetLayout: invalid second-derivative pair");
    }
  }
}

double JetBatch::second(int i, int j, std::size_t point) const {
  const int c = layout.second_channel(i, j);
  if (c < 0) throw InputError("JetBatch: second derivative not carried");
  return data[static_cast<std::size_t>(c) * size + point];
}

Jet JetBatch::jet(std::size_t point) const {
  const int d = layout.input_dim;
  Jet out;
  out.value = value(point);
  out.grad.assign(static_cast<std::size_t>(d), 0.0);
  out.hess.assign(static_cast<std::size_t>(d) * d, 0.0);
  if (layout.first_order) {
    for (int i = 0; i < d; ++i) out.grad[i] = grad(i, point);
  }
  for (std::size_t p = 0; p < layout.second_order.size(); ++p) {
    auto [i, j] = layout.second_order[p];
    const double h =
        data[static_cast<std::size_t>(layout.pair_channel(p)) * size + point];
    out.hess[static_cast<std::size_t>(i) * d + j] = h;
    out.hess[static_cast<std::size_t>(j) * d + i] = h;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluator

struct JetEvaluator::Workspace {
  // acts[0] is the input jet; acts[l + 1] the output of hidden layer l.
  std::vector<Matrix> acts;
  // Pre-activations of each hidden layer.
  std::vector<Matrix> pre;
  Matrix output;
  Matrix adj;
  Matrix adj_next;
  Matrix dpre;
  Eigen::ArrayXXd s1, s2, s3;
  // Vectorized reductions peel by pointer alignment, so parameters,
  // adjoints and gradients live in Eigen-owned buffers to keep every
  // evaluation bit-reproducible.
  Eigen::VectorXd theta;
  Eigen::VectorXd grad;
  Eigen::RowVectorXd g_out;
  std::vector<LayerView> views;
  JetLayout layout;
  std::size_t n = 0;
};

JetEvaluator::JetEvaluator() : ws_(std::make_unique<Workspace>()) {}
JetEvaluator::~JetEvaluator() = default;
JetEvaluator::JetEvaluator(JetEvaluator&&) noexcept = default;
JetEvaluator& JetEvaluator::operator=(JetEvaluator&&) noexcept = default;

namespace {

void run_forward(JetEvaluator::Workspace&, const ApproximatorParams&,
                 const PointCloud&, const JetLayout&);

}  // namespace

JetBatch JetEvaluator::forward(const ApproximatorParams& params,
                               const PointCloud& points,
                               const JetLayout& layout) {
  validate(params);
  layout.check();
  if (points.dim() != params.input_dim() || layout.input_dim != params.input_dim()) {
    throw InputError("point dimension " + std::to_string(points.dim()) +
                     " does not match network input dimension " +
                     std::to_string(params.input_dim()));
  }
  JetBatch batch(layout, points.size());
  if (points.empty()) return batch;
  run_forward(*ws_, params, points, layout);
  std::copy(ws_->output.data(), ws_->output.data() + ws_->output.size(),
            batch.data.begin());
  return batch;
}

namespace {

void run_forward(JetEvaluator::Workspace& ws, const ApproximatorParams& params,
                 const PointCloud& points, const JetLayout& layout) {
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  const int channels = layout.channels();
  const int d = layout.input_dim;
  ws.views = layer_views(params.layer_sizes);
  ws.layout = layout;
  ws.n = points.size();
  const std::size_t hidden = ws.views.size() - 1;
  ws.acts.resize(hidden + 1);
  ws.pre.resize(hidden);

  Matrix& input = ws.acts[0];
  input.setZero(d, channels * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int a = 0; a < d; ++a) input(a, j) = points(static_cast<std::size_t>(j), a);
  }
  if (layout.first_order) {
    for (int i = 0; i < d; ++i) {
      input.block(i, layout.grad_channel(i) * n, 1, n).setOnes();
    }
  }

  ws.theta = Eigen::Map<const Eigen::VectorXd>(params.values.data(),
                                               static_cast<Eigen::Index>(params.values.size()));
  const double* theta = ws.theta.data();
  for (std::size_t l = 0; l < hidden; ++l) {
    const LayerView& v = ws.views[l];
    Eigen::Map<const RowMajorMatrix> w(theta + v.weight_offset, v.out, v.in);
    Eigen::Map<const Eigen::VectorXd> b(theta + v.bias_offset, v.out);
    Matrix& z = ws.pre[l];
    z.noalias() = w * ws.acts[l];
    z.leftCols(n).colwise() += b;

    Matrix& h = ws.acts[l + 1];
    h.resize(v.out, channels * n);
    auto z0 = z.leftCols(n).array();
    auto t = h.leftCols(n).array();
    t = z0.tanh();
    if (channels == 1) continue;
    ws.s1 = 1.0 - t.square();
    ws.s2 = -2.0 * t * ws.s1;
    if (layout.first_order) {
      for (int i = 0; i < d; ++i) {
        const Eigen::Index c = layout.grad_channel(i) * n;
        h.middleCols(c, n).array() = ws.s1 * z.middleCols(c, n).array();
      }
    }
    for (std::size_t p = 0; p < layout.second_order.size(); ++p) {
      auto [a, bb] = layout.second_order[p];
      const Eigen::Index c = layout.pair_channel(p) * n;
      const Eigen::Index ca = layout.grad_channel(a) * n;
      const Eigen::Index cb = layout.grad_channel(bb) * n;
      h.middleCols(c, n).array() =
          ws.s2 * z.middleCols(ca, n).array() * z.middleCols(cb, n).array() +
          ws.s1 * z.middleCols(c, n).array();
    }
  }

  const LayerView& last = ws.views.back();
  Eigen::Map<const RowMajorMatrix> w(theta + last.weight_offset, last.out, last.in);
  ws.output.noalias() = w * ws.acts[hidden];
  ws.output.leftCols(n).array() += theta[last.bias_offset];
}

}  // namespace

ObjectiveValue JetEvaluator::gradient(const ApproximatorParams& params,
                                      JetObjective& objective) {
  validate(params);
  ObjectiveValue result;
  result.gradient.assign(params.values.size(), 0.0);

  const PointCloud& points = objective.points();
  if (!points.empty()) {
    const JetLayout& layout = objective.layout();
    JetBatch jets = forward(params, points, layout);
    JetBatch adjoint(layout, jets.size);
    result.value = objective.evaluate(jets, adjoint);
    if (!std::isfinite(result.value)) {
      throw NumericalError("objective value is not finite", result.value);
    }

    Workspace& ws = *ws_;
    const Eigen::Index n = static_cast<Eigen::Index>(ws.n);
    const int channels = layout.channels();
    const double* theta = ws.theta.data();
    ws.grad.setZero(static_cast<Eigen::Index>(params.values.size()));
    double* grad = ws.grad.data();
    const std::size_t hidden = ws.views.size() - 1;

    // Output layer.
    ws.g_out = Eigen::Map<const Eigen::RowVectorXd>(adjoint.data.data(), channels * n);
    const Eigen::RowVectorXd& g_out = ws.g_out;
    {
      const LayerView& v = ws.views.back();
      Eigen::Map<RowMajorMatrix> dw(grad + v.weight_offset, v.out, v.in);
      dw.noalias() = g_out * ws.acts[hidden].transpose();
      grad[v.bias_offset] = g_out.leftCols(n).sum();
      Eigen::Map<const RowMajorMatrix> w(theta + v.weight_offset, v.out, v.in);
      ws.adj.noalias() = w.transpose() * g_out;
    }

    for (std::size_t step = 0; step < hidden; ++step) {
      const std::size_t l = hidden - 1 - step;
      const LayerView& v = ws.views[l];
      const Matrix& z = ws.pre[l];
      const Matrix& h = ws.acts[l + 1];
      Matrix& g = ws.adj;
      Matrix& dz = ws.dpre;
      dz.resize(v.out, channels * n);

      auto t = h.leftCols(n).array();
      ws.s1 = 1.0 - t.square();
      auto dz0 = dz.leftCols(n).array();
      dz0 = g.leftCols(n).array() * ws.s1;
      if (channels > 1) {
        ws.s2 = -2.0 * t * ws.s1;
        if (!layout.second_order.empty()) {
          ws.s3 = -2.0 * ws.s1.square() + 4.0 * t.square() * ws.s1;
        }
        if (layout.first_order) {
          for (int i = 0; i < layout.input_dim; ++i) {
            const Eigen::Index c = layout.grad_channel(i) * n;
            auto gi = g.middleCols(c, n).array();
            dz.middleCols(c, n).array() = gi * ws.s1;
            dz0 += gi * ws.s2 * z.middleCols(c, n).array();
          }
        }
        for (std::size_t p = 0; p < layout.second_order.size(); ++p) {
          auto [a, b] = layout.second_order[p];
          const Eigen::Index c = layout.pair_channel(p) * n;
          const Eigen::Index ca = layout.grad_channel(a) * n;
          const Eigen::Index cb = layout.grad_channel(b) * n;
          auto gp = g.middleCols(c, n).array();
          auto za = z.middleCols(ca, n).array();
          auto zb = z.middleCols(cb, n).array();
          dz.middleCols(c, n).array() = gp * ws.s1;
          dz0 += gp * (ws.s3 * za * zb + ws.s2 * z.middleCols(c, n).array());
          dz.middleCols(ca, n).array() += gp * ws.s2 * zb;
          dz.middleCols(cb, n).array() += gp * ws.s2 * za;
        }
      }

      Eigen::Map<RowMajorMatrix> dw(grad + v.weight_offset, v.out, v.in);
      dw.noalias() = dz * ws.acts[l].transpose();
      Eigen::Map<Eigen::VectorXd> db(grad + v.bias_offset, v.out);
      db = dz.leftCols(n).rowwise().sum();
      if (l > 0) {
        Eigen::Map<const RowMajorMatrix> w(theta + v.weight_offset, v.out, v.in);
        ws.adj_next.noalias() = w.transpose() * dz;
        std::swap(ws.adj, ws.adj_next);
      }
    }
    std::copy(ws.grad.data(), ws.grad.data() + ws.grad.size(), result.gradient.begin());
  }

  const double explicit_term =
      objective.parameter_term(params.values, result.gradient);
  result.value += explicit_term;
  if (!std::isfinite(result.value)) {
    throw NumericalError("objective value is not finite", result.value);
  }
  for (double g : result.gradient) {
    if (!std::isfinite(g)) {
      throw NumericalError("objective gradient is not finite", g);
    }
  }
  return result;
}

Jet eval_jet(const ApproximatorParams& params, std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(params.input_dim())) {
    throw InputError("eval_jet: point has " + std::to_string(point.size()) +
                     " coordinates, network expects " +
                     std::to_string(params.input_dim()));
  }
  PointCloud cloud(params.input_dim());
  cloud.push_back(point);
  JetEvaluator evaluator;
  return evaluator.forward(params, cloud, JetLayout::full(params.input_dim())).jet(0);
}

std::vector<double> eval_values(const ApproximatorParams& params,
                                const PointCloud& points) {
  JetEvaluator evaluator;
  JetBatch batch =
      evaluator.forward(params, points, JetLayout::value_only(params.input_dim()));
  return std::move(batch.data);
}

ObjectiveValue objective_gradient(const ApproximatorParams& params,
                                  JetObjective& objective) {
  JetEvaluator evaluator;
  return evaluator.gradient(params, objective);
}

}  // namespace cgmpinn
