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

#include "cgmpinn/checkpoint.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "cgmpinn/errors.hpp"
#include "cgmpinn/format.hpp"

namespace cgmpinn {

namespace {

constexpr const char* kMagic = "cgmpinn-checkpoint";
constexpr int kVersion = 1;

void expect_keyword(std::istream& in, const std::string& keyword) {
  std::string word;
  if (!(in >> word) || word != keyword) {
    throw InputError("checkpoint: expected '" + keyword + "', found '" + word + "'");
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const ApproximatorParams& params) {
  validate(params);
  out << kMagic << ' ' << kVersion << '\n';
  out << "activation " << to_string(params.activation) << '\n';
  out << "layers " << params.layer_sizes.size();
  for (int w : params.layer_sizes) out << ' ' << w;
  out << '\n';
  out << "values " << params.values.size() << '\n';
  for (double v : params.values) out << format_real(v) << '\n';
}

ApproximatorParams read_checkpoint(std::istream& in) {
  expect_keyword(in, kMagic);
  int version = 0;
  if (!(in >> version) || version != kVersion) {
    throw InputError("checkpoint: unsupported version");
  }
  ApproximatorParams params;
  expect_keyword(in, "activation");
  std::string activation;
  in >> activation;
  params.activation = parse_activation(activation);

  expect_keyword(in, "layers");
  std::size_t count = 0;
  if (!(in >> count)) throw InputError("checkpoint: missing layer count");
  params.layer_sizes.resize(count);
  for (int& w : params.layer_sizes) {
    if (!(in >> w)) throw InputError("checkpoint: truncated layer sizes");
  }

  expect_keyword(in, "values");
  if (!(in >> count)) throw InputError("checkpoint: missing value count");
  params.values.resize(count);
  std::string token;
  for (double& v : params.values) {
    if (!(in >> token)) throw InputError("checkpoint: truncated values");
    char* end = nullptr;
    v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
      throw InputError("checkpoint: malformed value '" + token + "'");
    }
  }
  validate(params);
  return params;
}

void save_checkpoint(const std::filesystem::path& path,
                     const ApproximatorParams& params) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write checkpoint " + path.string());
  write_checkpoint(out, params);
}

ApproximatorParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace cgmpinn
