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

#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cgmpinn/trainer.hpp"
#include "cgmpinn_cli/config.hpp"

namespace cgmpinn::cli {

/// Column headers of the per-run CSV files.
inline constexpr const char* kTrainHeader =
    "iter,loss_total,loss_pde_w,loss_pde_unweighted,loss_bc,loss_ic,"
    "lambda_pde,lambda_bc,lambda_ic,tau,grad_norm";
inline constexpr const char* kTimingHeader = "iter,wall_ms";
inline constexpr const char* kRefreshHeader =
    "iter,tau,component,gmm_weight,gmm_mean,gmm_variance,difficulty,"
    "normalized_difficulty,component_weight,min_sample_weight,max_sample_weight";

std::filesystem::path run_directory(const std::filesystem::path& out, ProblemId problem,
                                    Method method, std::uint64_t seed);

void write_train_csv(std::ostream& out, std::span<const TrainRow> rows);
void write_timing_csv(std::ostream& out, std::span<const TrainRow> rows);
void write_refresh_csv(std::ostream& out, std::span<const RefreshRow> rows);
void write_grid_csv(std::ostream& out, const RunRecord& record);
void write_summary_json(std::ostream& out, const RunSummary& summary);

/// Writes train.csv, timing.csv, refresh.csv, summary.json, checkpoint.txt
/// and grid.csv into dir (created if needed).
void write_run_outputs(const RunRecord& record, const std::filesystem::path& dir);

struct RunOutcome {
  Method method = Method::pinn;
  std::uint64_t seed = 0;
  std::filesystem::path dir;
  RunSummary summary;
  /// Set when the run threw before producing a record.
  std::string error;

  bool ok() const { return error.empty() && summary.status == "ok"; }
};

/// Runs every (method, seed) pair, writing outputs as each run finishes.
/// Progress lines go to `log`.
std::vector<RunOutcome> run_experiment(const ExperimentConfig& config, std::ostream& log);

void print_table(std::ostream& out, std::span<const RunOutcome> outcomes);

}  // namespace cgmpinn::cli
