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

#include "cgmpinn_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "cgmpinn/errors.hpp"

namespace cgmpinn::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& key, const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw UsageError(key, "empty list entry for '" + key + "'");
    out.push_back(item);
  }
  if (out.empty()) throw UsageError(key, "'" + key + "' needs at least one value");
  return out;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError(key, "'" + key + "' expects an integer, got '" + value + "'");
  }
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double out = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(out)) {
    throw UsageError(key, "'" + key + "' expects a finite number, got '" + value + "'");
  }
  return out;
}

bool parse_flag(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw UsageError(key, "'" + key + "' expects on|off, got '" + value + "'");
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter int_field(T TrainConfig::*field) {
  return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
    c.train.*field = parse_integer<T>(k, v);
  };
}

Setter real_field(double TrainConfig::*field) {
  return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
    c.train.*field = parse_real(k, v);
  };
}

template <typename T>
Setter curriculum_int(T CurriculumConfig::*field) {
  return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
    c.train.curriculum.*field = parse_integer<T>(k, v);
  };
}

Setter curriculum_real(double CurriculumConfig::*field) {
  return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
    c.train.curriculum.*field = parse_real(k, v);
  };
}

Setter balancer_real(double BalancerConfig::*field) {
  return [field](ExperimentConfig& c, const std::string& k, const std::string& v) {
    c.train.balancer.*field = parse_real(k, v);
  };
}

const std::vector<std::string>& coefficient_names() {
  static const std::vector<std::string> names = {"alpha1", "alpha2", "s",  "beta1", "beta2",
                                                 "gamma",  "a",      "nu", "D",     "r"};
  return names;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["problem"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      try {
        c.problem = parse_problem(v);
      } catch (const ConfigError& e) {
        throw UsageError(k, e.what());
      }
    };
    t["method"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      std::vector<Method> methods;
      for (const std::string& name : split_list(k, v)) {
        try {
          methods.push_back(parse_method(name));
        } catch (const ConfigError& e) {
          throw UsageError(k, e.what());
        }
      }
      c.methods = std::move(methods);
    };
    t["seed"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      std::vector<std::uint64_t> seeds;
      for (const std::string& s : split_list(k, v)) {
        seeds.push_back(parse_integer<std::uint64_t>(k, s));
      }
      c.seeds = std::move(seeds);
    };
    t["out"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      if (v.empty()) throw UsageError(k, "'out' must not be empty");
      c.out = v;
    };
    t["jobs"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.jobs = parse_integer<int>(k, v);
      if (c.jobs < 1) throw UsageError(k, "'jobs' must be >= 1");
    };
    t["optimizer"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      try {
        c.train.optimizer = parse_optimizer(v);
      } catch (const ConfigError& e) {
        throw UsageError(k, e.what());
      }
    };
    t["relobralo"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      c.train.relobralo = parse_flag(k, v);
    };
    t["refresh_after_start"] = [](ExperimentConfig& c, const std::string& k,
                                  const std::string& v) {
      c.train.refresh_after_start = parse_flag(k, v);
    };
    t["hidden_widths"] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
      std::vector<int> widths;
      for (const std::string& s : split_list(k, v)) widths.push_back(parse_integer<int>(k, s));
      c.train.hidden_widths = std::move(widths);
    };
    t["adam_iters"] = int_field(&TrainConfig::adam_iters);
    t["lbfgs_iters"] = int_field(&TrainConfig::lbfgs_iters);
    t["gd_iters"] = int_field(&TrainConfig::gd_iters);
    t["lbfgs_memory"] = int_field(&TrainConfig::lbfgs_memory);
    t["n_interior"] = int_field(&TrainConfig::n_interior);
    t["n_boundary"] = int_field(&TrainConfig::n_boundary);
    t["n_initial"] = int_field(&TrainConfig::n_initial);
    t["grid_per_axis"] = int_field(&TrainConfig::grid_per_axis);
    t["adam_lr"] = real_field(&TrainConfig::adam_lr);
    t["gd_lr"] = real_field(&TrainConfig::gd_lr);
    t["wolfe_c1"] = real_field(&TrainConfig::wolfe_c1);
    t["wolfe_c2"] = real_field(&TrainConfig::wolfe_c2);
    t["curriculum.beta"] = curriculum_real(&CurriculumConfig::beta);
    t["curriculum.c_sat"] = curriculum_real(&CurriculumConfig::c_sat);
    t["curriculum.eps"] = curriculum_real(&CurriculumConfig::eps);
    t["curriculum.reg_covar"] = curriculum_real(&CurriculumConfig::reg_covar);
    t["curriculum.gmm_tol"] = curriculum_real(&CurriculumConfig::gmm_tol);
    t["curriculum.k_max"] = curriculum_int(&CurriculumConfig::k_max);
    t["curriculum.k_upd"] = curriculum_int(&CurriculumConfig::k_upd);
    t["curriculum.k_components"] = curriculum_int(&CurriculumConfig::k_components);
    t["curriculum.gmm_max_iter"] = curriculum_int(&CurriculumConfig::gmm_max_iter);
    t["balancer.alpha"] = balancer_real(&BalancerConfig::alpha);
    t["balancer.rho"] = balancer_real(&BalancerConfig::rho);
    t["balancer.kappa"] = balancer_real(&BalancerConfig::kappa);
    t["balancer.eps"] = balancer_real(&BalancerConfig::eps);
    t["balancer.history"] = [](ExperimentConfig& c, const std::string& k,
                               const std::string& v) {
      c.train.balancer.history = parse_integer<std::size_t>(k, v);
    };
    for (const std::string& name : coefficient_names()) {
      t["problem." + name] = [name](ExperimentConfig& c, const std::string& k,
                                    const std::string& v) {
        c.coefficients[name] = parse_real(k, v);
      };
    }
    t["methods"] = t["method"];
    t["seeds"] = t["seed"];
    return t;
  }();
  return table;
}

}  // namespace

void apply_setting(ExperimentConfig& config, const std::string& key,
                   const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw UsageError(key, "unknown configuration key '" + key + "'");
  it->second(config, key, trim(value));
}

void parse_config(std::istream& in, ExperimentConfig& config) {
  std::string line, section;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw UsageError(line, "line " + std::to_string(number) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(line, "line " + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    apply_setting(config, key, line.substr(eq + 1));
  }
}

void load_config_file(const std::filesystem::path& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw UsageError("config", "cannot read config file " + path.string());
  parse_config(in, config);
}

void check_complete(const ExperimentConfig& config) {
  if (!config.problem) throw UsageError("problem", "missing required key 'problem'");
  if (config.methods.empty()) throw UsageError("method", "no method given");
  if (config.seeds.empty()) throw UsageError("seed", "no seed given");
  try {
    make_problem(*config.problem, config.coefficients);
  } catch (const ConfigError& e) {
    throw UsageError("problem", e.what());
  }
  try {
    resolve(config.train, *config.problem).validate();
  } catch (const ConfigError& e) {
    throw UsageError("train", e.what());
  }
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& [key, setter] : setters()) keys.push_back(key);
  return keys;
}

}  // namespace cgmpinn::cli
