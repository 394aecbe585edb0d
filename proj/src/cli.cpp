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

#include "pstr/cli.hpp"

#include "pstr/config.hpp"
#include "pstr/datasets.hpp"
#include "pstr/gradient.hpp"
#include "pstr/harness.hpp"
#include "pstr/pipeline.hpp"
#include "pstr/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace pstr {
namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void emit_report(const ExperimentReport& report, const fs::path& dir) {
  fs::create_directories(dir);
  const auto doc = report_to_json(report);
  write_text(dir / "report.json", doc.dump(2) + "\n");
  const auto table = render_table(doc);
  write_text(dir / "report.txt", table);
  write_text(dir / "timing.json", timing_to_json(report).dump(2) + "\n");
  std::cout << table;
}

int cmd_generate(const fs::path& spec_path, const fs::path& out_dir) {
  const auto spec = parse_piecewise_spec(read_json(spec_path));
  const auto data = make_piecewise(spec);
  fs::create_directories(out_dir);
  write_csv(data.source, out_dir / "source.csv");
  write_csv(data.target, out_dir / "target.csv");
  std::cout << "wrote " << (out_dir / "source.csv").string() << " and "
            << (out_dir / "target.csv").string() << "\n";
  return 0;
}

GridSpec grid_for(const ExperimentConfig& cfg, const TargetDataset& raw) {
  GridSpec spec;
  const auto d = static_cast<std::size_t>(raw.dimension());
  spec.lower = cfg.gradient.lower;
  spec.upper = cfg.gradient.upper;
  if (spec.lower.empty())
    for (Index a = 0; a < raw.dimension(); ++a) spec.lower.push_back(raw.features.col(a).minCoeff());
  if (spec.upper.empty())
    for (Index a = 0; a < raw.dimension(); ++a) spec.upper.push_back(raw.features.col(a).maxCoeff());
  spec.resolution = cfg.gradient.resolution;
  if (spec.resolution.empty()) spec.resolution.assign(d, 50);
  spec.step = cfg.gradient.step;
  if (spec.lower.size() != d)
    throw std::invalid_argument("gradient bounds must have one entry per feature");
  return spec;
}

/// Tunes PSTR on the first split, refits on every labelled row and maps the
/// gradient norm of the target model and of the source model, both in the
/// original feature and label units.
int cmd_gradient(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const PreparedData data = prepare_data(cfg);
  const Split s = split(data.target, cfg.split, 0);
  const Selection sel = tune_method(Method::pstr, data, cfg, tuning_phase(data, s));

  PipelineConfig pc;
  pc.nw = {cfg.nw.family, sel.nw_bandwidth};
  pc.source = {cfg.source.family, sel.source_bandwidth};
  pc.lambda = sel.lambda;
  const PsrtModel model = fit_pipeline(data.target, data.source_preds, pc);

  TargetDataset raw;
  raw.features = data.target.features.array().rowwise() * data.transform.feature_scale.transpose().array();
  raw.features.rowwise() += data.transform.feature_mean.transpose();
  const GridSpec spec = grid_for(cfg, raw);

  const auto& tf = data.transform;
  const auto target_grid = gradient_grid(
      [&](const Eigen::MatrixXd& pts) {
        return tf.invert_labels(
            extend_out_of_sample(model, data.target, pc.nw, tf.apply_features(pts)));
      },
      spec);
  const auto source_grid = gradient_grid(
      [&](const Eigen::MatrixXd& pts) {
        return tf.invert_labels(data.source.predict(tf.apply_features(pts)));
      },
      spec);

  fs::create_directories(out_dir);
  write_gradient_csv(target_grid, out_dir / "gradient_map.csv");
  write_gradient_csv(source_grid, out_dir / "gradient_map_source.csv");
  write_text(out_dir / "model.json", model_to_json(model, pc, data.target) + "\n");
  std::cout << "wrote " << (out_dir / "gradient_map.csv").string() << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Transfer regression with a source-prediction similarity graph", "pstr"};
  app.require_subcommand(1);

  fs::path spec_path, out_dir, config_path, in_path, out_path;

  auto* gen = app.add_subcommand("generate", "Write synthetic source.csv and target.csv");
  gen->add_option("--spec", spec_path, "Piecewise dataset spec (JSON)")->required();
  gen->add_option("--out", out_dir, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Run an experiment: report.json, report.txt, timing.json");
  auto* sg = app.add_subcommand("sweep-guidance", "PSTR with simulated oracle guidance per fraction");
  auto* sn = app.add_subcommand("sweep-nystrom", "PSTR solved with Nystrom sketches per fraction");
  auto* gm = app.add_subcommand("gradient-map", "Gradient-norm grid of the fitted model");
  for (auto* sub : {run, sg, sn, gm}) {
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "Override the configured output directory");
  }

  auto* rep = app.add_subcommand("report", "Render a report.json as an aligned table");
  rep->add_option("--in", in_path, "report.json")->required();
  rep->add_option("--out", out_path, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(spec_path, out_dir);
    if (rep->parsed()) {
      const auto table = render_table(read_json(in_path));
      if (out_path.empty())
        std::cout << table;
      else
        write_text(out_path, table);
      return 0;
    }

    if (!fs::exists(config_path))
      throw std::runtime_error("config file '" + config_path.string() + "' does not exist");
    ExperimentConfig cfg = load_config(config_path);
    const fs::path dir = out_dir.empty() ? cfg.output_dir : out_dir;
    if (run->parsed()) {
      emit_report(run_experiment(cfg), dir);
    } else if (sg->parsed()) {
      std::vector<double> fractions{0.0};
      for (double f : cfg.guidance.fractions)
        if (f != 0.0) fractions.push_back(f);
      emit_report(guidance_sweep(cfg, fractions), dir / "guidance");
    } else if (sn->parsed()) {
      emit_report(nystrom_sweep(cfg, cfg.nystrom.fractions), dir / "nystrom");
    } else if (gm->parsed()) {
      return cmd_gradient(cfg, dir);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pstr
