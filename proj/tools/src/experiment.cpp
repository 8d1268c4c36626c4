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

#include "cgmpinn_cli/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "cgmpinn/checkpoint.hpp"
#include "cgmpinn/format.hpp"

namespace cgmpinn::cli {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void write_reals(std::ostream& out, std::initializer_list<double> values) {
  for (double v : values) out << ',' << format_real(v);
}

std::string list_entry(const std::vector<double>& v, std::size_t m) {
  return m < v.size() ? format_real(v[m]) : std::string();
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

std::filesystem::path run_directory(const std::filesystem::path& out, ProblemId problem,
                                    Method method, std::uint64_t seed) {
  return out / (std::string(to_string(problem)) + "_" + std::string(to_string(method)) +
                "_" + std::to_string(seed));
}

void write_train_csv(std::ostream& out, std::span<const TrainRow> rows) {
  out << kTrainHeader << '\n';
  for (const TrainRow& r : rows) {
    out << r.iter;
    write_reals(out, {r.loss_total, r.loss_pde_w, r.loss_pde_unweighted, r.loss_bc,
                      r.loss_ic, r.lambda_pde, r.lambda_bc, r.lambda_ic, r.tau,
                      r.grad_norm});
    out << '\n';
  }
}

void write_timing_csv(std::ostream& out, std::span<const TrainRow> rows) {
  out << kTimingHeader << '\n';
  for (const TrainRow& r : rows) out << r.iter << ',' << format_real(r.wall_ms) << '\n';
}

void write_refresh_csv(std::ostream& out, std::span<const RefreshRow> rows) {
  out << kRefreshHeader << '\n';
  for (const RefreshRow& r : rows) {
    const std::size_t k = std::max(r.gmm_weights.size(), r.component_weights.size());
    // Variants without a mixture still log one row per refresh.
    for (std::size_t m = 0; m < std::max<std::size_t>(k, 1); ++m) {
      out << r.iter << ',' << format_real(r.tau) << ',';
      if (k > 0) out << m;
      out << ',' << list_entry(r.gmm_weights, m) << ',' << list_entry(r.gmm_means, m) << ','
          << list_entry(r.gmm_variances, m) << ',' << list_entry(r.difficulty, m) << ','
          << list_entry(r.normalized_difficulty, m) << ','
          << list_entry(r.component_weights, m);
      write_reals(out, {r.min_sample_weight, r.max_sample_weight});
      out << '\n';
    }
  }
}

void write_grid_csv(std::ostream& out, const RunRecord& record) {
  const ProblemSpec& spec = record.spec;
  static const char* spatial[] = {"x", "y"};
  for (int a = 0; a < spec.spatial_dim; ++a) out << spatial[a] << ',';
  if (spec.time_dependent) out << "t,";
  out << "u_exact,u_pred,abs_err\n";
  for (std::size_t i = 0; i < record.grid.size(); ++i) {
    for (double c : record.grid[i]) out << format_real(c) << ',';
    const double e = record.grid_exact[i], p = record.grid_pred[i];
    out << format_real(e) << ',' << format_real(p) << ',' << format_real(std::abs(p - e))
        << '\n';
  }
}

void write_summary_json(std::ostream& out, const RunSummary& s) {
  nlohmann::ordered_json j;
  j["method"] = s.method;
  j["problem"] = s.problem;
  j["seed"] = s.seed;
  j["status"] = s.status;
  if (!s.message.empty()) j["message"] = s.message;
  j["e_loss"] = number_or_null(s.metrics.e_loss);
  j["e2"] = number_or_null(s.metrics.e2);
  j["rel_e2"] = number_or_null(s.metrics.rel_e2);
  j["e_inf"] = number_or_null(s.metrics.e_inf);
  j["cpu_s"] = s.cpu_s;
  j["wall_s"] = s.wall_s;
  nlohmann::ordered_json config;
  for (const auto& [key, value] : s.config) config[key] = value;
  j["config"] = std::move(config);
  out << j.dump(2) << '\n';
}

void write_run_outputs(const RunRecord& record, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    auto out = open_output(dir / "train.csv");
    write_train_csv(out, record.rows);
  }
  {
    auto out = open_output(dir / "timing.csv");
    write_timing_csv(out, record.rows);
  }
  {
    auto out = open_output(dir / "refresh.csv");
    write_refresh_csv(out, record.refreshes);
  }
  {
    auto out = open_output(dir / "summary.json");
    write_summary_json(out, record.summary);
  }
  save_checkpoint(dir / "checkpoint.txt", record.params);
  {
    auto out = open_output(dir / "grid.csv");
    write_grid_csv(out, record);
  }
}

std::vector<RunOutcome> run_experiment(const ExperimentConfig& config, std::ostream& log) {
  check_complete(config);
  const ProblemSpec spec = make_problem(*config.problem, config.coefficients);

  std::vector<RunOutcome> outcomes;
  for (Method m : config.methods) {
    for (std::uint64_t seed : config.seeds) {
      RunOutcome o;
      o.method = m;
      o.seed = seed;
      o.dir = run_directory(config.out, spec.id, m, seed);
      outcomes.push_back(std::move(o));
    }
  }

  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < outcomes.size(); i = next++) {
      RunOutcome& o = outcomes[i];
      TrainConfig tc = config.train;
      tc.method = o.method;
      tc.seed = o.seed;
      try {
        const RunRecord record = train(spec, tc);
        o.summary = record.summary;
        write_run_outputs(record, o.dir);
      } catch (const std::exception& e) {
        o.error = e.what();
      }
      std::lock_guard lock(log_mutex);
      log << "finished " << to_string(o.method) << " seed " << o.seed << ": "
          << (o.error.empty() ? o.summary.status : "error: " + o.error) << " -> "
          << o.dir.string() << '\n';
    }
  };
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(outcomes.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return outcomes;
}

void print_table(std::ostream& out, std::span<const RunOutcome> outcomes) {
  char line[256];
  std::snprintf(line, sizeof line, "%-15s %6s %13s %13s %13s %13s %9s  %s\n", "method",
                "seed", "e_loss", "e2", "rel_e2", "e_inf", "cpu_s", "status");
  out << line;
  for (const RunOutcome& o : outcomes) {
    const ErrorMetrics& m = o.summary.metrics;
    std::snprintf(line, sizeof line, "%-15s %6llu %13.6e %13.6e %13.6e %13.6e %9.2f  %s\n",
                  std::string(to_string(o.method)).c_str(),
                  static_cast<unsigned long long>(o.seed), m.e_loss, m.e2, m.rel_e2, m.e_inf,
                  o.summary.cpu_s, o.error.empty() ? o.summary.status.c_str() : "error");
    out << line;
  }
}

}  // namespace cgmpinn::cli
