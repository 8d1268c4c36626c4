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

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

#include "cgmpinn/approximator.hpp"
#include "cgmpinn/curriculum.hpp"
#include "cgmpinn/gmm.hpp"
#include "cgmpinn/problems.hpp"
#include "cgmpinn/rng.hpp"
#include "cgmpinn/trainer.hpp"

namespace {

using namespace cgmpinn;

const std::vector<int> kNet{1, 50, 50, 50, 50, 1};

// Arg: number of collocation points.
void BM_JetForward(benchmark::State& state) {
  const ProblemSpec spec = make_problem(ProblemId::poisson1d);
  const PointSets sets = sample_points(spec, static_cast<int>(state.range(0)), 2, 0, 1);
  const ApproximatorParams p = init_network(kNet, 2);
  JetEvaluator ev;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.forward(p, sets.interior, JetLayout::diagonal(1)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_JetForward)->Arg(100)->Arg(1500)->Unit(benchmark::kMicrosecond);

void BM_LossGradient(benchmark::State& state) {
  const ProblemId id = static_cast<ProblemId>(state.range(0));
  const ProblemSpec spec = make_problem(id);
  const BenchmarkDefaults d = benchmark_defaults(id);
  const PointSets sets = sample_points(spec, d.n_interior, d.n_boundary,
                                       spec.time_dependent ? d.n_initial : 0, 3);
  PinnLoss loss(spec, sets);
  const ApproximatorParams p = init_network(d.layer_sizes(spec.input_dim()), 4);
  JetEvaluator ev;
  for (auto _ : state) benchmark::DoNotOptimize(ev.gradient(p, loss));
  state.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_LossGradient)
    ->Arg(static_cast<int>(ProblemId::poisson1d))
    ->Arg(static_cast<int>(ProblemId::heat))
    ->Arg(static_cast<int>(ProblemId::advdiff))
    ->Unit(benchmark::kMillisecond);

std::vector<double> heavy_tailed(std::size_t n) {
  SplitMix64 rng(5);
  std::vector<double> r(n);
  for (double& v : r) {
    const double g = std::sqrt(-2.0 * std::log(rng.uniform_open())) *
                     std::cos(6.283185307179586 * rng.uniform());
    v = rng.uniform() < 0.1 ? 50.0 * g : g;
  }
  return r;
}

// Arg: number of mixture components.
void BM_GmmFit(benchmark::State& state) {
  const std::vector<double> r = heavy_tailed(1500);
  GmmFitOptions o;
  o.k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_gmm(r, o));
}
BENCHMARK(BM_GmmFit)->Arg(1)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_CurriculumRefresh(benchmark::State& state) {
  const std::vector<double> r = heavy_tailed(1500);
  CurriculumConfig cfg;
  CurriculumState s = initial_curriculum_state(r.size());
  for (auto _ : state) {
    refresh(s, r, 2000, cfg);
    benchmark::DoNotOptimize(s.sample_weights.data());
  }
}
BENCHMARK(BM_CurriculumRefresh)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
