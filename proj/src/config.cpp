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

#include "pstr/config.hpp"

#include <fstream>
#include <stdexcept>

namespace pstr {
namespace {

using nlohmann::json;

constexpr std::pair<Method, std::string_view> kTags[] = {
    {Method::pstr, "pstr"},       {Method::pstr_sc, "pstr_sc"}, {Method::target_only, "target_only"},
    {Method::lgc, "lgc"},         {Method::stacked, "stacked"}, {Method::offset, "offset"}};

KernelSetting parse_kernel(const json& j, KernelSetting fallback) {
  if (j.contains("family")) fallback.family = parse_kernel_family(j.at("family").get<std::string>());
  if (j.contains("bandwidth")) {
    const auto& b = j.at("bandwidth");
    if (b.is_string()) {
      if (b.get<std::string>() != "auto")
        throw std::invalid_argument("kernel.bandwidth must be a number or \"auto\"");
      fallback.bandwidth.reset();
    } else {
      const double h = b.get<double>();
      if (!(h > 0.0)) throw std::invalid_argument("kernel.bandwidth must be positive");
      fallback.bandwidth = h;
    }
  }
  return fallback;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string_view method_tag(Method m) {
  for (const auto& [method, tag] : kTags)
    if (method == m) return tag;
  return "pstr";
}

std::string_view method_label(Method m) {
  switch (m) {
    case Method::pstr: return "PSTR";
    case Method::pstr_sc: return "PSTR+SC";
    case Method::target_only: return "Target Only";
    case Method::lgc: return "Semisupervised";
    case Method::stacked: return "Stacked";
    case Method::offset: return "Offset (simplified)";
  }
  return "PSTR";
}

Method parse_method(std::string_view tag) {
  for (const auto& [method, t] : kTags)
    if (t == tag) return method;
  throw std::invalid_argument("unknown method '" + std::string(tag) + "'");
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw std::invalid_argument("config: at least one method is required");
  if (lambda_grid.empty()) throw std::invalid_argument("config: lambda_grid is empty");
  for (double l : lambda_grid)
    if (!(l >= 0.0)) throw std::invalid_argument("config: lambda values must be non-negative");
  split.validate();
  if (dataset.kind == DatasetSource::Kind::piecewise) dataset.piecewise.validate();
  auto fraction_ok = [](double f) { return f > 0.0 && f <= 1.0; };
  for (double f : guidance.fractions)
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("config: guidance fractions must lie in [0, 1]");
  for (double f : nystrom.fractions)
    if (!fraction_ok(f)) throw std::invalid_argument("config: nystrom fractions must lie in (0, 1]");
  if (nystrom.fraction && !fraction_ok(*nystrom.fraction))
    throw std::invalid_argument("config: nystrom.fraction must lie in (0, 1]");
  for (double a : lgc_alphas)
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("config: lgc alphas must lie in (0, 1)");
  if (!(stacked_ridge >= 0.0)) throw std::invalid_argument("config: stacked ridge must be >= 0");
  if (!(gradient.step > 0.0)) throw std::invalid_argument("config: gradient step must be positive");
}

PiecewiseSpec parse_piecewise_spec(const json& j) {
  PiecewiseSpec spec;
  read(j, "breakpoints", spec.breakpoints);
  read(j, "source_levels", spec.source_levels);
  read(j, "target_levels", spec.target_levels);
  read(j, "noise_sd", spec.noise_sd);
  read(j, "n_points", spec.n_points);
  read(j, "rng_seed", spec.rng_seed);
  spec.validate();
  return spec;
}

json piecewise_spec_to_json(const PiecewiseSpec& spec) {
  return {{"breakpoints", spec.breakpoints}, {"source_levels", spec.source_levels},
          {"target_levels", spec.target_levels}, {"noise_sd", spec.noise_sd},
          {"n_points", spec.n_points}, {"rng_seed", spec.rng_seed}};
}

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  read(j, "name", cfg.name);

  if (j.contains("dataset")) {
    const auto& d = j.at("dataset");
    const auto type = d.value("type", std::string("piecewise"));
    if (type == "piecewise") {
      cfg.dataset.kind = DatasetSource::Kind::piecewise;
      cfg.dataset.piecewise = parse_piecewise_spec(d.value("spec", json::object()));
    } else if (type == "csv") {
      cfg.dataset.kind = DatasetSource::Kind::csv;
      cfg.dataset.target_csv = resolve(base_dir, d.at("target").get<std::string>());
      cfg.dataset.source_csv = resolve(base_dir, d.at("source").get<std::string>());
    } else {
      throw std::invalid_argument("config: unknown dataset type '" + type + "'");
    }
  }

  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& m : j.at("methods")) cfg.methods.push_back(parse_method(m.get<std::string>()));
  }

  if (j.contains("kernels")) {
    const auto& k = j.at("kernels");
    if (k.contains("nw")) cfg.nw = parse_kernel(k.at("nw"), cfg.nw);
    if (k.contains("source")) cfg.source = parse_kernel(k.at("source"), cfg.source);
    if (k.contains("spatial")) cfg.spatial = parse_kernel(k.at("spatial"), cfg.spatial);
    if (k.contains("feature")) cfg.feature = parse_kernel(k.at("feature"), cfg.feature);
    if (k.contains("source_model"))
      cfg.source_model = parse_kernel(k.at("source_model"), cfg.source_model);
  }

  read(j, "lambda_grid", cfg.lambda_grid);
  read(j, "lambda_extensions", cfg.lambda_extensions);

  if (j.contains("split")) {
    const auto& s = j.at("split");
    read(s, "n_labeled", cfg.split.n_labeled);
    read(s, "validation_fraction", cfg.split.validation_fraction);
    read(s, "n_repeats", cfg.split.n_repeats);
    read(s, "seed", cfg.split.rng_seed);
  }

  if (j.contains("guidance")) {
    const auto& g = j.at("guidance");
    read(g, "fractions", cfg.guidance.fractions);
    read(g, "percentile", cfg.guidance.percentile);
    read(g, "seed", cfg.guidance.seed);
    if (g.contains("base")) cfg.guidance.base = parse_method(g.at("base").get<std::string>());
  }

  if (j.contains("nystrom")) {
    const auto& n = j.at("nystrom");
    if (n.contains("fraction") && !n.at("fraction").is_null())
      cfg.nystrom.fraction = n.at("fraction").get<double>();
    read(n, "fractions", cfg.nystrom.fractions);
    read(n, "seed", cfg.nystrom.seed);
    read(n, "jitter", cfg.nystrom.jitter);
    read(n, "self_weight", cfg.nystrom.self_weight);
  }

  if (j.contains("gradient")) {
    const auto& g = j.at("gradient");
    read(g, "lower", cfg.gradient.lower);
    read(g, "upper", cfg.gradient.upper);
    read(g, "resolution", cfg.gradient.resolution);
    read(g, "step", cfg.gradient.step);
  }

  if (j.contains("lgc")) read(j.at("lgc"), "alphas", cfg.lgc_alphas);
  if (j.contains("stacked")) read(j.at("stacked"), "ridge", cfg.stacked_ridge);
  if (j.contains("output_dir"))
    cfg.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(j, path.parent_path());
}

}  // namespace pstr
