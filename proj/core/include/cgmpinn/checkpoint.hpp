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

// Parameter checkpoint, a line-oriented text record:
//
//   cgmpinn-checkpoint 1
//   activation tanh
//   layers <count> <w0> <w1> ... <wL>
//   values <count>
//   <value>            (one per line, flat-layout order, %.17g)
//
// Values are written with 17 significant digits, so a save/load round trip
// reproduces every double bit for bit.

#pragma once

#include <filesystem>
#include <iosfwd>

#include "cgmpinn/approximator.hpp"

namespace cgmpinn {

void write_checkpoint(std::ostream& out, const ApproximatorParams& params);
ApproximatorParams read_checkpoint(std::istream& in);

void save_checkpoint(const std::filesystem::path& path,
                     const ApproximatorParams& params);
ApproximatorParams load_checkpoint(const std::filesystem::path& path);

}  // namespace cgmpinn
