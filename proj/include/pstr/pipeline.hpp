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

#include "pstr/datasets.hpp"
#include "pstr/graph.hpp"
#include "pstr/kernels.hpp"
#include "pstr/source.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>

namespace pstr {

struct NystromOptions {
  double fraction = 1.0;
  std::uint64_t seed = 0;
  double jitter = -1.0;  // negative: 1e-10 * trace(B) / p
  double self_weight = 1.0;
};

struct PipelineConfig {
  Kernel<double> nw;      // Nadaraya-Watson over features
  Kernel<double> source;  // over source-prediction differences
  std::optional<Kernel<double>> spatial;
  std::optional<GuidanceSet> guidance;  // node indices are dataset rows
  double lambda = 1.0;
  std::optional<NystromOptions> nystrom;  // absent: exact solve
};

/// Transductive fit over every row of the dataset, in dataset order.
struct PsrtModel {
  Eigen::VectorXd predictions;
  double lambda = 0.0;
  SimilarityGraph<double> graph;
  double stationarity_residual = 0.0;
  bool approximate = false;
};

/// Source graph, then the optional spatial product, then optional guidance.
SimilarityGraph<double> build_pipeline_graph(const TargetDataset& ds,
                                             const Eigen::VectorXd& source_preds,
                                             const PipelineConfig& cfg);

/// `source_preds` has one entry per dataset row.
PsrtModel fit_pipeline(const TargetDataset& ds, const Eigen::VectorXd& source_preds,
                       const PipelineConfig& cfg);
PsrtModel fit_pipeline(const TargetDataset& ds, const SourcePredictor& source,
                       const PipelineConfig& cfg);

/// Nadaraya-Watson model on (all dataset features, model predictions).
Eigen::VectorXd extend_out_of_sample(const PsrtModel& model, const TargetDataset& ds,
                                     const Kernel<double>& kernel,
                                     const Eigen::MatrixXd& new_points);

/// FNV-1a over the raw bytes of the feature matrix (column-major).
std::uint64_t dataset_fingerprint(const TargetDataset& ds);

/// JSON record: lambda, kernel configuration, predictions, fingerprint.
std::string model_to_json(const PsrtModel& model, const PipelineConfig& cfg,
                          const TargetDataset& ds);

}  // namespace pstr
