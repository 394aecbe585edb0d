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
#include "pstr/kernels.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pstr {

enum class Method { pstr, pstr_sc, target_only, lgc, stacked, offset };

std::string_view method_tag(Method m);
/// Column heading used in reports.
std::string_view method_label(Method m);
Method parse_method(std::string_view tag);

/// `bandwidth` empty means "auto": tuned over median-heuristic x {1/4..4}.
struct KernelSetting {
  KernelFamily family = KernelFamily::gaussian;
  std::optional<double> bandwidth;
};

struct DatasetSource {
  enum class Kind { piecewise, csv };
  Kind kind = Kind::piecewise;
  PiecewiseSpec piecewise;
  std::filesystem::path target_csv;
  std::filesystem::path source_csv;
};

struct GuidanceSettings {
  std::vector<double> fractions{0.1, 0.2};
  double percentile = 10.0;
  std::uint64_t seed = 0;
  Method base = Method::pstr;
};

struct NystromSettings {
  std::optional<double> fraction;  // set: every PSTR solve is approximate
  std::vector<double> fractions{0.05, 0.1, 0.2};
  std::uint64_t seed = 0;
  double jitter = -1.0;
  double self_weight = 1.0;
};

struct GradientSettings {
  std::vector<double> lower, upper;  // empty: data range per axis
  std::vector<Index> resolution;     // empty: 50 per axis
  double step = 1e-3;
};

struct ExperimentConfig {
  std::string name = "experiment";
  DatasetSource dataset;
  std::vector<Method> methods{Method::pstr_sc, Method::pstr,    Method::target_only,
                              Method::lgc,     Method::stacked, Method::offset};
  KernelSetting nw;            // target Nadaraya-Watson
  KernelSetting source;        // k1 over source-prediction gaps
  KernelSetting spatial;       // k2 for pstr_sc
  KernelSetting feature;       // LGC feature graph
  KernelSetting source_model;  // NW source predictor; auto = leave-one-out choice
  std::vector<double> lambda_grid{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  int lambda_extensions = 3;  // extra decades allowed past either end of the grid
  SplitSpec split;
  GuidanceSettings guidance;
  NystromSettings nystrom;
  GradientSettings gradient;
  std::vector<double> lgc_alphas{0.1, 0.5, 0.9, 0.99};
  double stacked_ridge = 1e-6;
  std::filesystem::path output_dir = "out";

  void validate() const;
};

PiecewiseSpec parse_piecewise_spec(const nlohmann::json& j);
nlohmann::json piecewise_spec_to_json(const PiecewiseSpec& spec);

/// Relative paths in the config are resolved against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace pstr
