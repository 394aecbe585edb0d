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

#include "pstr/harness.hpp"

#include "pstr/baselines.hpp"
#include "pstr/nystrom.hpp"
#include "pstr/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace pstr {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr Index kMedianSampleCap = 2000;

/// Median heuristic over at most kMedianSampleCap evenly strided rows.
double median_of_rows(const Eigen::MatrixXd& points) {
  if (points.rows() < 2 || points.cols() == 0) return 1.0;
  std::vector<Index> rows;
  const Index stride = std::max<Index>(1, (points.rows() + kMedianSampleCap - 1) / kMedianSampleCap);
  for (Index r = 0; r < points.rows(); r += stride) rows.push_back(r);
  const auto d = pairwise_distances(select_rows(points, rows));
  return median_heuristic<double>(d);
}

std::vector<double> grid_for(const KernelSetting& setting, double median) {
  if (setting.bandwidth) return {*setting.bandwidth};
  return bandwidth_grid(median);
}

std::string format_fraction(double f) {
  std::ostringstream os;
  os << f;
  return os.str();
}

std::string percent_label(double f) {
  std::ostringstream os;
  os << f * 100.0 << "%";
  return os.str();
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = base ^ 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t v : {a, b}) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
  }
  return h;
}

Phase make_phase(const PreparedData& data, const std::vector<Index>& train,
                 const std::vector<Index>& scored_rows, const std::vector<Index>& hidden_rows) {
  const TargetDataset& ds = data.target;
  std::vector<Index> unlabeled = scored_rows;
  unlabeled.insert(unlabeled.end(), hidden_rows.begin(), hidden_rows.end());
  for (Index r = ds.labeled_count(); r < ds.size(); ++r) unlabeled.push_back(r);

  Phase phase;
  phase.pool = ds.subset(train, unlabeled);
  std::vector<Index> rows = train;
  rows.insert(rows.end(), unlabeled.begin(), unlabeled.end());
  phase.source_preds = select_entries(data.source_preds, rows);
  for (std::size_t k = 0; k < scored_rows.size(); ++k)
    phase.scored.push_back(static_cast<Index>(train.size() + k));
  phase.scored_labels = select_entries(ds.labels, scored_rows);
  if (ds.unlabeled_count() == 0) phase.oracle_labels = select_entries(ds.labels, rows);
  return phase;
}

Kernel<double> kernel_of(const KernelSetting& s, double bandwidth) { return {s.family, bandwidth}; }

std::optional<GuidanceSet> phase_guidance(const Phase& phase, const ExperimentConfig& cfg,
                                          const PstrOptions& options) {
  if (!options.guidance_fraction || *options.guidance_fraction <= 0.0) return std::nullopt;
  if (phase.oracle_labels.size() != phase.pool.size())
    throw std::invalid_argument("oracle guidance needs true labels for every instance");
  return simulate_oracle_guidance(phase.oracle_labels, *options.guidance_fraction,
                                  cfg.guidance.percentile, options.guidance_seed);
}

/// Linear solver for one graph and one lambda, exact or sketched.
class GraphSolver {
 public:
  GraphSolver(const SimilarityGraph<double>& graph, const std::optional<NystromOptions>& nystrom)
      : lap_(laplacian(graph)) {
    if (nystrom)
      sketch_ = sample_sketch(graph, sketch_size(graph.size(), nystrom->fraction), nystrom->seed,
                              nystrom->self_weight, nystrom->jitter);
  }

  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> for_lambda(double lambda) const {
    if (lambda == 0.0) return [](const Eigen::VectorXd& g) { return g; };
    if (sketch_)
      return [this, lambda](const Eigen::VectorXd& g) {
        return approx_solve(*sketch_, lap_.degrees, lambda, g);
      };
    auto system = std::make_shared<PsrtSystem<double>>(lap_, lambda);
    return [system](const Eigen::VectorXd& g) { return system->solve(g); };
  }

 private:
  Laplacian<double> lap_;
  std::optional<NystromSketch<double>> sketch_;
};

SimilarityGraph<double> pstr_graph(const Phase& phase, double source_bw,
                                   const std::optional<double>& spatial_bw,
                                   const KernelSetting& source_setting,
                                   const KernelSetting& spatial_setting,
                                   const std::optional<GuidanceSet>& guidance) {
  PipelineConfig pc;
  pc.source = kernel_of(source_setting, source_bw);
  if (spatial_bw) pc.spatial = kernel_of(spatial_setting, *spatial_bw);
  pc.guidance = guidance;
  return build_pipeline_graph(phase.pool, phase.source_preds, pc);
}

bool is_pstr(Method m) { return m == Method::pstr || m == Method::pstr_sc; }

Selection tune_pstr(Method method, const PreparedData& data, const ExperimentConfig& cfg,
                    const Phase& phase, const PstrOptions& options) {
  const auto nw_grid = grid_for(cfg.nw, data.feature_median);
  const auto src_grid = grid_for(cfg.source, data.source_median);
  std::vector<std::optional<double>> sp_grid{std::nullopt};
  if (method == Method::pstr_sc) {
    if (!phase.pool.has_spatial())
      throw std::invalid_argument("pstr_sc needs spatial coordinates in the dataset");
    sp_grid.clear();
    for (double h : grid_for(cfg.spatial, data.spatial_median)) sp_grid.emplace_back(h);
  }
  const auto guidance = phase_guidance(phase, cfg, options);
  const Index nl = phase.pool.labeled_count();

  std::vector<std::optional<Eigen::VectorXd>> targets;
  for (double h : nw_grid) {
    try {
      targets.emplace_back(nw_smoother(phase.pool.features.topRows(nl), phase.pool.labels,
                                       phase.pool.features, kernel_of(cfg.nw, h))
                               .fitted());
    } catch (const std::exception&) {
      targets.emplace_back(std::nullopt);
    }
  }

  Selection best;
  best.method = method;
  best.validation_mse = std::numeric_limits<double>::infinity();
  auto evaluate = [&](const std::vector<double>& lambdas) {
    for (double hs : src_grid)
      for (const auto& hsp : sp_grid) {
        std::optional<GraphSolver> solver;
        try {
          solver.emplace(pstr_graph(phase, hs, hsp, cfg.source, cfg.spatial, guidance),
                         options.nystrom);
        } catch (const std::exception&) {
          continue;
        }
        for (double lambda : lambdas) {
          std::function<Eigen::VectorXd(const Eigen::VectorXd&)> solve;
          try {
            solve = solver->for_lambda(lambda);
          } catch (const std::exception&) {
            continue;
          }
          for (std::size_t k = 0; k < nw_grid.size(); ++k) {
            if (!targets[k]) continue;
            try {
              const double e = mse_at(solve(*targets[k]), phase);
              if (e < best.validation_mse) {
                best.validation_mse = e;
                best.nw_bandwidth = nw_grid[k];
                best.source_bandwidth = hs;
                best.spatial_bandwidth = hsp;
                best.lambda = lambda;
              }
            } catch (const std::exception&) {
            }
          }
        }
      }
  };

  std::vector<double> lambdas = cfg.lambda_grid;
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  evaluate(lambdas);
  int low = 0, high = 0;
  while (std::isfinite(best.validation_mse)) {
    if (best.lambda == lambdas.front() && lambdas.front() > 0.0 && low < cfg.lambda_extensions) {
      ++low;
      lambdas.insert(lambdas.begin(), lambdas.front() / 10.0);
      evaluate({lambdas.front()});
    } else if (best.lambda == lambdas.back() && lambdas.back() > 0.0 &&
               high < cfg.lambda_extensions) {
      ++high;
      lambdas.push_back(lambdas.back() * 10.0);
      evaluate({lambdas.back()});
    } else {
      break;
    }
  }
  if (!std::isfinite(best.validation_mse))
    throw std::runtime_error(std::string(method_tag(method)) + ": every hyperparameter failed");
  return best;
}

}  // namespace

nlohmann::json Selection::to_json() const {
  nlohmann::json j;
  switch (method) {
    case Method::pstr:
    case Method::pstr_sc:
      j["nw_bandwidth"] = nw_bandwidth;
      j["source_bandwidth"] = source_bandwidth;
      if (spatial_bandwidth) j["spatial_bandwidth"] = *spatial_bandwidth;
      j["lambda"] = lambda;
      break;
    case Method::lgc:
      j["feature_bandwidth"] = nw_bandwidth;
      j["alpha"] = alpha;
      break;
    case Method::target_only:
    case Method::stacked:
    case Method::offset:
      j["nw_bandwidth"] = nw_bandwidth;
      break;
  }
  j["validation_mse"] = validation_mse;
  return j;
}

PreparedData prepare_data(const ExperimentConfig& cfg) {
  TargetDataset target, source;
  if (cfg.dataset.kind == DatasetSource::Kind::piecewise) {
    auto generated = make_piecewise(cfg.dataset.piecewise);
    target = std::move(generated.target);
    source = std::move(generated.source);
  } else {
    for (const auto& p : {cfg.dataset.target_csv, cfg.dataset.source_csv})
      if (!std::filesystem::exists(p))
        throw std::runtime_error("dataset file '" + p.string() + "' does not exist");
    target = load_csv(cfg.dataset.target_csv);
    source = load_csv(cfg.dataset.source_csv);
    if (source.labeled_count() == 0)
      throw std::invalid_argument("source dataset '" + source.name + "' has no labels");
  }

  PreparedData data;
  auto [standardized, transform] = standardize(target);
  data.target = std::move(standardized);
  data.transform = std::move(transform);

  const Index snl = source.labeled_count();
  const Eigen::MatrixXd source_features =
      data.transform.apply_features(source.features.topRows(snl));
  const Kernel<double> source_kernel =
      cfg.source_model.bandwidth
          ? Kernel<double>{cfg.source_model.family, *cfg.source_model.bandwidth}
          : select_source_kernel(source_features, source.labels, cfg.source_model.family);
  data.source = SourcePredictor::from_model(source_features, source.labels, source_kernel);
  data.source_preds = data.source.predict(data.target.features);

  data.feature_median = median_of_rows(data.target.features);
  data.source_median = median_of_rows(data.source_preds);
  data.spatial_median = data.target.has_spatial() ? median_of_rows(data.target.spatial) : 1.0;
  return data;
}

Phase tuning_phase(const PreparedData& data, const Split& split) {
  return make_phase(data, split.train, split.validation, split.test);
}

Phase evaluation_phase(const PreparedData& data, const Split& split) {
  return make_phase(data, split.train, split.test, {});
}

double mse_at(const Eigen::VectorXd& predictions, const Phase& phase) {
  if (predictions.size() != phase.pool.size())
    throw std::invalid_argument("prediction vector does not cover the pool");
  double sse = 0.0;
  for (std::size_t k = 0; k < phase.scored.size(); ++k) {
    const double r = predictions[phase.scored[k]] - phase.scored_labels[static_cast<Index>(k)];
    sse += r * r;
  }
  const double e = sse / static_cast<double>(phase.scored.size());
  if (!std::isfinite(e)) throw std::runtime_error("non-finite predictions");
  return e;
}

Eigen::VectorXd predict_with(const Selection& sel, const ExperimentConfig& cfg, const Phase& phase,
                             const PstrOptions& options) {
  const auto& pool = phase.pool;
  const Index nl = pool.labeled_count();
  switch (sel.method) {
    case Method::pstr:
    case Method::pstr_sc: {
      PipelineConfig pc;
      pc.nw = kernel_of(cfg.nw, sel.nw_bandwidth);
      pc.source = kernel_of(cfg.source, sel.source_bandwidth);
      if (sel.spatial_bandwidth) pc.spatial = kernel_of(cfg.spatial, *sel.spatial_bandwidth);
      pc.guidance = phase_guidance(phase, cfg, options);
      pc.lambda = sel.lambda;
      pc.nystrom = options.nystrom;
      return fit_pipeline(pool, phase.source_preds, pc).predictions;
    }
    case Method::target_only:
      return target_only(pool.features, pool.labels, kernel_of(cfg.nw, sel.nw_bandwidth));
    case Method::lgc:
      return semisupervised_lgc(pool.features, pool.labels,
                                kernel_of(cfg.feature, sel.nw_bandwidth), sel.alpha);
    case Method::stacked: {
      const Eigen::VectorXd nw =
          target_only(pool.features, pool.labels, kernel_of(cfg.nw, sel.nw_bandwidth));
      return stacked<double>(phase.source_preds, nw, pool.labels, cfg.stacked_ridge).predictions;
    }
    case Method::offset:
      return offset(pool.features, pool.labels, phase.source_preds,
                    kernel_of(cfg.nw, sel.nw_bandwidth));
  }
  (void)nl;
  throw std::logic_error("unhandled method");
}

Selection tune_method(Method method, const PreparedData& data, const ExperimentConfig& cfg,
                      const Phase& tuning, const PstrOptions& options) {
  if (is_pstr(method)) return tune_pstr(method, data, cfg, tuning, options);

  std::vector<Selection> candidates;
  if (method == Method::lgc) {
    for (double h : grid_for(cfg.feature, data.feature_median))
      for (double a : cfg.lgc_alphas) {
        Selection s;
        s.method = method;
        s.nw_bandwidth = h;
        s.alpha = a;
        candidates.push_back(s);
      }
  } else {
    for (double h : grid_for(cfg.nw, data.feature_median)) {
      Selection s;
      s.method = method;
      s.nw_bandwidth = h;
      candidates.push_back(s);
    }
  }

  Selection best;
  best.validation_mse = std::numeric_limits<double>::infinity();
  for (auto& c : candidates) {
    try {
      c.validation_mse = mse_at(predict_with(c, cfg, tuning, options), tuning);
    } catch (const std::exception&) {
      continue;
    }
    if (c.validation_mse < best.validation_mse) best = c;
  }
  if (!std::isfinite(best.validation_mse))
    throw std::runtime_error(std::string(method_tag(method)) + ": every hyperparameter failed");
  return best;
}

SplitOutcome evaluate_method(Method method, const PreparedData& data, const ExperimentConfig& cfg,
                             const Split& split, Index repeat, const PstrOptions& options) {
  PstrOptions tune_opt = options, eval_opt = options;
  tune_opt.guidance_seed = mix_seed(options.guidance_seed, static_cast<std::uint64_t>(repeat), 0);
  eval_opt.guidance_seed = mix_seed(options.guidance_seed, static_cast<std::uint64_t>(repeat), 1);

  const Phase tuning = tuning_phase(data, split);
  SplitOutcome out;
  out.selection = tune_method(method, data, cfg, tuning, tune_opt);
  const Phase evaluation = evaluation_phase(data, split);
  out.mse = mse_at(predict_with(out.selection, cfg, evaluation, eval_opt), evaluation);
  out.mse_raw = out.mse * data.transform.label_scale * data.transform.label_scale;
  return out;
}

std::pair<double, double> mean_and_ci(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  const auto n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PSTR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

namespace {

/// One column of a report: a method (maybe with options) evaluated per split.
struct Column {
  std::string tag;
  std::string label;
  std::function<SplitOutcome(const Split&, Index, double& solve_seconds)> run;
};

struct Cell {
  std::optional<SplitOutcome> outcome;
  std::string error;
  double seconds = 0.0;
  double solve_seconds = 0.0;
};

void for_each_repeat(Index repeats, const std::function<void(Index)>& body) {
  const unsigned workers =
      std::min<unsigned>(worker_count(), static_cast<unsigned>(std::max<Index>(1, repeats)));
  if (workers <= 1) {
    for (Index r = 0; r < repeats; ++r) body(r);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (Index r = next++; r < repeats; r = next++) body(r);
    });
}

ExperimentReport run_columns(const ExperimentConfig& cfg, const PreparedData& data,
                             const std::vector<Column>& columns, std::string kind) {
  const Index repeats = cfg.split.n_repeats;
  std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(repeats),
                                       std::vector<Cell>(columns.size()));
  for_each_repeat(repeats, [&](Index r) {
    auto& row = cells[static_cast<std::size_t>(r)];
    std::optional<Split> s;
    std::string split_error;
    try {
      s = split(data.target, cfg.split, r);
    } catch (const std::exception& e) {
      split_error = e.what();
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (!s) {
        row[c].error = split_error;
        continue;
      }
      const auto start = Clock::now();
      try {
        row[c].outcome = columns[c].run(*s, r, row[c].solve_seconds);
      } catch (const std::exception& e) {
        row[c].error = e.what();
      }
      row[c].seconds = seconds_since(start);
    }
  });

  ExperimentReport report;
  report.name = cfg.name;
  report.dataset = data.target.name;
  report.kind = std::move(kind);
  report.n_repeats = repeats;
  report.n_labeled = cfg.split.n_labeled;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    MethodResult m;
    m.method = columns[c].tag;
    m.label = columns[c].label;
    for (Index r = 0; r < repeats; ++r) {
      const Cell& cell = cells[static_cast<std::size_t>(r)][c];
      m.seconds += cell.seconds;
      m.solve_seconds += cell.solve_seconds;
      if (!cell.outcome) {
        if (!m.error) m.error = "split " + std::to_string(r) + ": " + cell.error;
        continue;
      }
      m.mse.push_back(cell.outcome->mse);
      m.mse_raw.push_back(cell.outcome->mse_raw);
      m.hyperparameters.push_back(cell.outcome->selection.to_json());
    }
    if (m.error) {
      m.mse.clear();
      m.mse_raw.clear();
      m.hyperparameters.clear();
    } else {
      std::tie(m.mean_mse, m.ci95) = mean_and_ci(m.mse);
      m.mean_mse_raw = mean_and_ci(m.mse_raw).first;
    }
    report.methods.push_back(std::move(m));
  }
  return report;
}

std::optional<NystromOptions> nystrom_for(const ExperimentConfig& cfg, double fraction, Index repeat) {
  NystromOptions o;
  o.fraction = fraction;
  o.seed = mix_seed(cfg.nystrom.seed, static_cast<std::uint64_t>(repeat), 7);
  o.jitter = cfg.nystrom.jitter;
  o.self_weight = cfg.nystrom.self_weight;
  return o;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const PreparedData data = prepare_data(cfg);
  std::vector<Column> columns;
  for (Method m : cfg.methods)
    columns.push_back({std::string(method_tag(m)), std::string(method_label(m)),
                       [&, m](const Split& s, Index r, double&) {
                         PstrOptions opt;
                         if (cfg.nystrom.fraction && is_pstr(m))
                           opt.nystrom = nystrom_for(cfg, *cfg.nystrom.fraction, r);
                         return evaluate_method(m, data, cfg, s, r, opt);
                       }});
  return run_columns(cfg, data, columns, "run");
}

ExperimentReport guidance_sweep(const ExperimentConfig& cfg, const std::vector<double>& fractions) {
  cfg.validate();
  const PreparedData data = prepare_data(cfg);
  const Method base = cfg.guidance.base;
  if (!is_pstr(base)) throw std::invalid_argument("guidance sweep base must be pstr or pstr_sc");
  std::vector<Column> columns;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double f = fractions[i];
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("guidance fractions must lie in [0, 1]");
    Column c;
    c.tag = std::string(method_tag(base)) + (f > 0.0 ? "@guidance=" + format_fraction(f) : "");
    c.label = std::string(method_label(base)) + (f > 0.0 ? ": " + percent_label(f) + " Guidance" : "");
    c.run = [&, f, i, base](const Split& s, Index r, double&) {
      PstrOptions opt;
      if (f > 0.0) {
        opt.guidance_fraction = f;
        opt.guidance_seed = mix_seed(cfg.guidance.seed, i, 0x67);
      }
      if (cfg.nystrom.fraction) opt.nystrom = nystrom_for(cfg, *cfg.nystrom.fraction, r);
      return evaluate_method(base, data, cfg, s, r, opt);
    };
    columns.push_back(std::move(c));
  }
  return run_columns(cfg, data, columns, "guidance_sweep");
}

ExperimentReport nystrom_sweep(const ExperimentConfig& cfg, const std::vector<double>& fractions) {
  cfg.validate();
  const PreparedData data = prepare_data(cfg);
  for (double f : fractions)
    if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("nystrom fractions must lie in (0, 1]");

  // Per repeat: one exact-solver tuning shared by every column.
  struct Shared {
    Selection selection;
    Phase evaluation;
  };
  std::vector<std::optional<Shared>> shared(static_cast<std::size_t>(cfg.split.n_repeats));
  std::vector<std::once_flag> once(shared.size());
  auto prepare = [&](const Split& s, Index r) -> const Shared& {
    auto& slot = shared[static_cast<std::size_t>(r)];
    std::call_once(once[static_cast<std::size_t>(r)], [&] {
      const Phase tuning = tuning_phase(data, s);
      slot = Shared{tune_method(Method::pstr, data, cfg, tuning), evaluation_phase(data, s)};
    });
    if (!slot) throw std::runtime_error("tuning failed");
    return *slot;
  };

  auto timed = [&](const Split& s, Index r, double& solve_seconds,
                   std::optional<double> fraction) -> SplitOutcome {
    const Shared& sh = prepare(s, r);
    const Phase& ph = sh.evaluation;
    const Selection& sel = sh.selection;
    PipelineConfig pc;
    pc.source = kernel_of(cfg.source, sel.source_bandwidth);
    const auto graph = build_pipeline_graph(ph.pool, ph.source_preds, pc);
    const Index nl = ph.pool.labeled_count();
    const Eigen::VectorXd g = nw_smoother(ph.pool.features.topRows(nl), ph.pool.labels,
                                          ph.pool.features, kernel_of(cfg.nw, sel.nw_bandwidth))
                                  .fitted();
    const auto start = Clock::now();
    Eigen::VectorXd f;
    if (!fraction || sel.lambda == 0.0) {
      f = solve_psrt(g, laplacian(graph), sel.lambda);
    } else {
      const auto opt = *nystrom_for(cfg, *fraction, r);
      const Eigen::VectorXd degrees = graph.weights.rowwise().sum();
      const auto sketch = sample_sketch(graph, sketch_size(graph.size(), *fraction), opt.seed,
                                        opt.self_weight, opt.jitter);
      f = approx_solve(sketch, degrees, sel.lambda, g);
    }
    solve_seconds = seconds_since(start);
    SplitOutcome out;
    out.selection = sel;
    out.mse = mse_at(f, ph);
    out.mse_raw = out.mse * data.transform.label_scale * data.transform.label_scale;
    return out;
  };

  std::vector<Column> columns;
  columns.push_back({"pstr", "PSTR", [&](const Split& s, Index r, double& t) {
                       return timed(s, r, t, std::nullopt);
                     }});
  for (double f : fractions)
    columns.push_back({"pstr@nystrom=" + format_fraction(f), "PSTR: " + percent_label(f) + " Nystrom",
                       [&, f](const Split& s, Index r, double& t) { return timed(s, r, t, f); }});
  return run_columns(cfg, data, columns, "nystrom_sweep");
}

}  // namespace pstr
