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

#include <cstddef>
#include <span>
#include <vector>

#include "cgmpinn/errors.hpp"

namespace cgmpinn {

/// A set of points of fixed dimension, stored row-major (one point per row).
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(int dim) : dim_(dim) {}
  PointCloud(int dim, std::vector<double> coords)
      : dim_(dim), coords_(std::move(coords)) {
    if (dim_ <= 0 || coords_.size() % static_cast<std::size_t>(dim_) != 0) {
      throw InputError("PointCloud: coordinate count is not a multiple of dim");
    }
  }

  int dim() const { return dim_; }
  std::size_t size() const {
    return dim_ > 0 ? coords_.size() / static_cast<std::size_t>(dim_) : 0;
  }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  double operator()(std::size_t i, int axis) const {
    return coords_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
  }

  void push_back(std::span<const double> point) {
    if (point.size() != static_cast<std::size_t>(dim_)) {
      throw InputError("PointCloud: point dimension mismatch");
    }
    coords_.insert(coords_.end(), point.begin(), point.end());
  }

  void append(const PointCloud& other) {
    if (other.empty()) return;
    if (other.dim_ != dim_) throw InputError("PointCloud: dimension mismatch");
    coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
  }

  const std::vector<double>& coords() const { return coords_; }

  bool operator==(const PointCloud&) const = default;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

}  // namespace cgmpinn
