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

#include "pstr/kernels.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace pstr {

/// Maps target instances to scalar source predictions: either a
/// Nadaraya-Watson model fitted on a labelled source set, or a fixed vector
/// aligned with the rows of one target dataset.
class SourcePredictor {
 public:
  static SourcePredictor from_model(Eigen::MatrixXd features, Eigen::VectorXd labels,
                                    Kernel<double> kernel);
  static SourcePredictor from_values(Eigen::VectorXd values);

  bool is_model() const { return !values_.has_value(); }
  const Kernel<double>& kernel() const { return kernel_; }

  /// Predictions for each row of `features`. A value-backed predictor only
  /// accepts a matrix with exactly as many rows as it has values.
  Eigen::VectorXd predict(const Eigen::MatrixXd& features) const;

 private:
  Eigen::MatrixXd features_;
  Eigen::VectorXd labels_;
  Kernel<double> kernel_;
  std::optional<Eigen::VectorXd> values_;
};

/// Leave-one-out Nadaraya-Watson squared error for one bandwidth; infinity
/// when some point has no neighbour.
double nw_loo_error(const Eigen::MatrixXd& features, const Eigen::VectorXd& labels,
                    const Kernel<double>& kernel);

/// Bandwidth minimising the leave-one-out error over median-heuristic x
/// {1/16, 1/8, 1/4, 1/2, 1, 2}.
Kernel<double> select_source_kernel(const Eigen::MatrixXd& features,
                                    const Eigen::VectorXd& labels, KernelFamily family);

}  // namespace pstr
