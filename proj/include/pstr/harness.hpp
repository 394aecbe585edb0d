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

#include "pstr/config.hpp"
#include "pstr/datasets.hpp"
#include "pstr/graph.hpp"
#include "pstr/pipeline.hpp"
#include "pstr/source.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pstr {

/// Standardised target data, the source predictor and its predictions on
/// every target row, plus the tuning grid centres.
struct PreparedData {
  TargetDataset target;
  Standardization transform;
  SourcePredictor source;
  Eigen::VectorXd source_preds;
  double feature_median = 1.0;  // pairwise feature distances
  double source_median = 1.0;   // pairwise |source prediction| gaps
  double spatial_median = 1.0;  // pairwise spatial distances (1 if no spatial data)
};

PreparedData prepare_data(const ExperimentConfig& cfg);

/// A transductive problem: the pool dataset (train rows labelled first) and
/// the positions inside it that are scored.
struct Phase {
  TargetDataset pool;
  Eigen::VectorXd source_preds;
  std::vector<Index> scored;       // positions in `pool`
  Eigen::VectorXd scored_labels;   // true standardised labels at `scored`
  Eigen::VectorXd oracle_labels;   // true labels of every pool row (empty if unknown)
};

/// Tuning phase: pool = train ∪ validation ∪ test ∪ unlabelled, scored on
/// validation. Evaluation phase: pool = train ∪ test ∪ unlabelled, scored on test.
Phase tuning_phase(const PreparedData& data, const Split& split);
Phase evaluation_phase(const PreparedData& data, const Split& split);

/// Optional modifiers for PSTR-style methods.
struct PstrOptions {
  std::optional<double> guidance_fraction;  // > 0: simulated oracle guidance
  std::uint64_t guidance_seed = 0;
  std::optional<NystromOptions> nystrom;
};

/// Tuned hyperparameters for one method on one split.
struct Selection {
  Method method = Method::pstr;
  double nw_bandwidth = 0.0;
  double source_bandwidth = 0.0;
  std::optional<double> spatial_bandwidth;
  double lambda = 0.0;
  double alpha = 0.0;  // lgc
  double validation_mse = 0.0;

  nlohmann::json to_json() const;
};

struct SplitOutcome {
  double mse = 0.0;      // standardised labels
  double mse_raw = 0.0;  // original label scale
  Selection selection;
};

double mse_at(const Eigen::VectorXd& predictions, const Phase& phase);

/// Grid search on the tuning phase.
Selection tune_method(Method method, const PreparedData& data, const ExperimentConfig& cfg,
                      const Phase& tuning, const PstrOptions& options = {});

/// Predictions on the phase pool for fixed hyperparameters.
Eigen::VectorXd predict_with(const Selection& sel, const ExperimentConfig& cfg, const Phase& phase,
                             const PstrOptions& options = {});

/// Tune on validation, refit, score on test.
SplitOutcome evaluate_method(Method method, const PreparedData& data, const ExperimentConfig& cfg,
                             const Split& split, Index repeat, const PstrOptions& options = {});

struct MethodResult {
  std::string method;  // tag, e.g. "pstr" or "pstr@guidance=0.2"
  std::string label;   // report column heading
  std::vector<double> mse;
  std::vector<double> mse_raw;
  std::vector<nlohmann::json> hyperparameters;
  double mean_mse = 0.0;
  double ci95 = 0.0;  // 1.96 * sample sd / sqrt(n)
  double mean_mse_raw = 0.0;
  std::optional<std::string> error;
  double seconds = 0.0;       // total wall clock, not part of report.json
  double solve_seconds = 0.0; // nystrom sweep only
};

struct ExperimentReport {
  std::string name;
  std::string dataset;
  std::string kind = "run";  // run, guidance_sweep, nystrom_sweep
  Index n_repeats = 0;
  Index n_labeled = 0;
  std::vector<MethodResult> methods;
};

/// Mean and 1.96 * sd / sqrt(n) half-width (sd with n - 1; zero for n = 1).
std::pair<double, double> mean_and_ci(const std::vector<double>& values);

ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport guidance_sweep(const ExperimentConfig& cfg, const std::vector<double>& fractions);
ExperimentReport nystrom_sweep(const ExperimentConfig& cfg, const std::vector<double>& fractions);

/// Worker count from PSTR_THREADS (0 or unset: hardware concurrency).
unsigned worker_count();

}  // namespace pstr
