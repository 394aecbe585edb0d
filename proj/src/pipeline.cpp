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

#include "pstr/pipeline.hpp"

#include "pstr/nystrom.hpp"
#include "pstr/solver.hpp"

#include <json.hpp>

#include <cstring>
#include <sstream>
#include <vector>

namespace pstr {
namespace {

nlohmann::json kernel_json(const Kernel<double>& k) {
  return {{"family", std::string(to_string(k.family))}, {"bandwidth", k.bandwidth}};
}

}  // namespace

SimilarityGraph<double> build_pipeline_graph(const TargetDataset& ds,
                                             const Eigen::VectorXd& source_preds,
                                             const PipelineConfig& cfg) {
  if (source_preds.size() != ds.size())
    throw std::invalid_argument("source predictions cover " + std::to_string(source_preds.size()) +
                                " of " + std::to_string(ds.size()) + " instances");
  auto graph = build_similarity_graph(source_preds, cfg.source);
  if (cfg.spatial) {
    if (!ds.has_spatial())
      throw std::invalid_argument("spatial kernel given but dataset '" + ds.name +
                                  "' has no spatial coordinates");
    graph = apply_spatial(std::move(graph), ds.spatial, *cfg.spatial);
  }
  if (cfg.guidance) graph = apply_guidance(std::move(graph), *cfg.guidance);
  return graph;
}

PsrtModel fit_pipeline(const TargetDataset& ds, const Eigen::VectorXd& source_preds,
                       const PipelineConfig& cfg) {
  ds.validate();
  if (ds.labeled_count() == 0) throw std::invalid_argument("fit_pipeline: no labelled instances");
  PsrtModel model;
  model.lambda = cfg.lambda;
  model.graph = build_pipeline_graph(ds, source_preds, cfg);
  const Laplacian<double> lap = laplacian(model.graph);
  const auto smoother =
      nw_smoother(ds.features.topRows(ds.labeled_count()), ds.labels, ds.features, cfg.nw);
  const Eigen::VectorXd g = smoother.fitted();

  if (cfg.nystrom && cfg.lambda > 0.0) {
    const auto& opt = *cfg.nystrom;
    const auto sketch = sample_sketch(model.graph, sketch_size(ds.size(), opt.fraction), opt.seed,
                                      opt.self_weight, opt.jitter);
    model.predictions = approx_solve(sketch, lap.degrees, cfg.lambda, g);
    model.approximate = true;
  } else {
    model.predictions = solve_psrt(g, lap, cfg.lambda);
  }
  model.stationarity_residual = stationarity_residual(lap, cfg.lambda, model.predictions, g);
  return model;
}

PsrtModel fit_pipeline(const TargetDataset& ds, const SourcePredictor& source,
                       const PipelineConfig& cfg) {
  return fit_pipeline(ds, source.predict(ds.features), cfg);
}

Eigen::VectorXd extend_out_of_sample(const PsrtModel& model, const TargetDataset& ds,
                                     const Kernel<double>& kernel,
                                     const Eigen::MatrixXd& new_points) {
  if (model.predictions.size() != ds.size())
    throw std::invalid_argument("extend_out_of_sample: model was not fitted on this dataset");
  return extend_out_of_sample(ds.features, model.predictions, new_points, kernel);
}

std::uint64_t dataset_fingerprint(const TargetDataset& ds) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(ds.features.data());
  const std::size_t count = static_cast<std::size_t>(ds.features.size()) * sizeof(double);
  for (std::size_t i = 0; i < count; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string model_to_json(const PsrtModel& model, const PipelineConfig& cfg,
                          const TargetDataset& ds) {
  nlohmann::json j;
  j["lambda"] = model.lambda;
  j["kernels"]["nw"] = kernel_json(cfg.nw);
  j["kernels"]["source"] = kernel_json(cfg.source);
  j["kernels"]["spatial"] = cfg.spatial ? kernel_json(*cfg.spatial) : nlohmann::json(nullptr);
  if (cfg.nystrom)
    j["nystrom"] = {{"fraction", cfg.nystrom->fraction},
                    {"seed", cfg.nystrom->seed},
                    {"self_weight", cfg.nystrom->self_weight}};
  j["predictions"] = std::vector<double>(model.predictions.data(),
                                         model.predictions.data() + model.predictions.size());
  std::ostringstream fp;
  fp << std::hex << dataset_fingerprint(ds);
  j["dataset"] = {{"name", ds.name}, {"fingerprint", fp.str()}, {"instances", ds.size()},
                  {"labeled", ds.labeled_count()}};
  return j.dump(2);
}

}  // namespace pstr
