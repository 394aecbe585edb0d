// Copyright 2026 The pstr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace pstr {

/// Axis-aligned box sampled on a regular lattice (resolution points per axis,
/// endpoints included; one point sits at the lower corner).
struct GridSpec {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Eigen::Index> resolution;
  double step = 1e-3;

  void validate() const;
  std::size_t dimension() const { return lower.size(); }
};

struct GradientGrid {
  Eigen::MatrixXd points;     // one lattice point per row, first axis fastest
  Eigen::VectorXd magnitude;  // ||grad f|| at each point
};

/// Central finite differences with the given step along every axis.
GradientGrid gradient_grid(const std::function<double(const Eigen::VectorXd&)>& f,
                           const GridSpec& spec);

/// Batch variant: `f` maps a matrix of rows to one value per row.
GradientGrid gradient_grid(const std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>& f,
                           const GridSpec& spec);

/// Columns x1..xd, gradient_norm.
void write_gradient_csv(const GradientGrid& grid, const std::filesystem::path& path);

}  // namespace pstr
