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

#include "pstr/datasets.hpp"

#include "pstr/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string_view>

namespace pstr {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view field) {
  if (field.empty()) return std::nullopt;
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value))
    throw std::invalid_argument("not a finite number: '" + std::string(field) + "'");
  return value;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::size_t column_of(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw SchemaError("column '" + name + "' not found in CSV header");
  return static_cast<std::size_t>(it - header.begin());
}

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.size() >= prefix.size() && std::string_view(s).substr(0, prefix.size()) == prefix;
}

}  // namespace

void TargetDataset::validate() const {
  if (labels.size() > features.rows())
    throw std::invalid_argument("dataset '" + name + "' has more labels than instances");
  if (spatial.cols() > 0 && spatial.rows() != features.rows())
    throw std::invalid_argument("dataset '" + name + "': spatial rows do not match instances");
}

TargetDataset TargetDataset::subset(const std::vector<Index>& labeled,
                                    const std::vector<Index>& unlabeled) const {
  std::vector<Index> rows = labeled;
  rows.insert(rows.end(), unlabeled.begin(), unlabeled.end());
  for (Index r : labeled)
    if (r < 0 || r >= labeled_count())
      throw std::out_of_range("subset: row " + std::to_string(r) + " is not a labelled row");
  for (Index r : unlabeled)
    if (r < 0 || r >= size()) throw std::out_of_range("subset: row out of range");
  TargetDataset out;
  out.name = name;
  out.features = select_rows(features, rows);
  out.spatial = has_spatial() ? Eigen::MatrixXd(select_rows(spatial, rows))
                              : Eigen::MatrixXd(static_cast<Index>(rows.size()), 0);
  out.labels = select_entries(labels, labeled);
  return out;
}

CsvSchema CsvSchema::detect(const std::vector<std::string>& header) {
  CsvSchema schema;
  schema.label_column.clear();
  for (const auto& col : header) {
    if (starts_with(col, "feature_")) schema.feature_columns.push_back(col);
    else if (starts_with(col, "spatial_")) schema.spatial_columns.push_back(col);
    else if (col == "label") schema.label_column = col;
  }
  if (schema.label_column.empty()) throw SchemaError("CSV header has no 'label' column");
  if (schema.feature_columns.empty()) throw SchemaError("CSV header has no feature_* column");
  return schema;
}

namespace {

std::vector<std::string> read_header(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, path.string() + " is empty");
  std::vector<std::string> header;
  for (auto f : split_fields(line)) header.emplace_back(f);
  return header;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

TargetDataset load_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_csv(path, CsvSchema::detect(read_header(in, path)));
}

TargetDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  if (schema.feature_columns.empty()) throw SchemaError("schema names no feature column");
  if (schema.label_column.empty()) throw SchemaError("schema names no label column");
  auto in = open_input(path);
  const auto header = read_header(in, path);

  std::vector<std::size_t> feature_idx, spatial_idx;
  for (const auto& c : schema.feature_columns) feature_idx.push_back(column_of(header, c));
  for (const auto& c : schema.spatial_columns) spatial_idx.push_back(column_of(header, c));
  const std::size_t label_idx = column_of(header, schema.label_column);

  struct Row {
    std::vector<double> features, spatial;
    std::optional<double> label;
  };
  std::vector<Row> labeled, unlabeled;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                                    std::to_string(fields.size()));
    Row row;
    try {
      for (auto i : feature_idx) {
        const auto v = parse_number(fields[i]);
        if (!v) throw std::invalid_argument("missing value in column '" + header[i] + "'");
        row.features.push_back(*v);
      }
      for (auto i : spatial_idx) {
        const auto v = parse_number(fields[i]);
        if (!v) throw std::invalid_argument("missing value in column '" + header[i] + "'");
        row.spatial.push_back(*v);
      }
      row.label = parse_number(fields[label_idx]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    (row.label ? labeled : unlabeled).push_back(std::move(row));
  }

  TargetDataset ds;
  ds.name = path.stem().string();
  const auto n = static_cast<Index>(labeled.size() + unlabeled.size());
  ds.features.resize(n, static_cast<Index>(feature_idx.size()));
  ds.spatial.resize(n, static_cast<Index>(spatial_idx.size()));
  ds.labels.resize(static_cast<Index>(labeled.size()));
  Index r = 0;
  for (const auto* part : {&labeled, &unlabeled})
    for (const auto& row : *part) {
      for (std::size_t k = 0; k < row.features.size(); ++k)
        ds.features(r, static_cast<Index>(k)) = row.features[k];
      for (std::size_t k = 0; k < row.spatial.size(); ++k)
        ds.spatial(r, static_cast<Index>(k)) = row.spatial[k];
      if (row.label) ds.labels[r] = *row.label;
      ++r;
    }
  return ds;
}

void write_csv(const TargetDataset& ds, const std::filesystem::path& path) {
  ds.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (Index k = 0; k < ds.dimension(); ++k) out << (k ? "," : "") << "feature_" << k;
  for (Index k = 0; k < ds.spatial.cols(); ++k) out << ",spatial_" << k;
  out << ",label\n";
  for (Index r = 0; r < ds.size(); ++r) {
    for (Index k = 0; k < ds.dimension(); ++k)
      out << (k ? "," : "") << format_number(ds.features(r, k));
    for (Index k = 0; k < ds.spatial.cols(); ++k) out << ',' << format_number(ds.spatial(r, k));
    out << ',';
    if (r < ds.labeled_count()) out << format_number(ds.labels[r]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Eigen::MatrixXd Standardization::apply_features(const Eigen::MatrixXd& features) const {
  if (features.cols() != feature_mean.size())
    throw SchemaError("feature dimension does not match the standardisation");
  return ((features.rowwise() - feature_mean.transpose()).array().rowwise() /
          feature_scale.transpose().array())
      .matrix();
}

Eigen::VectorXd Standardization::apply_labels(const Eigen::VectorXd& labels) const {
  return ((labels.array() - label_mean) / label_scale).matrix();
}

Eigen::VectorXd Standardization::invert_labels(const Eigen::VectorXd& standardized) const {
  return (standardized.array() * label_scale + label_mean).matrix();
}

std::pair<TargetDataset, Standardization> standardize(const TargetDataset& ds) {
  ds.validate();
  if (ds.labeled_count() == 0) throw std::invalid_argument("standardize: no labelled instances");
  Standardization t;
  const auto n = static_cast<double>(ds.size());
  t.feature_mean = ds.features.colwise().mean().transpose();
  t.feature_scale.resize(ds.dimension());
  for (Index k = 0; k < ds.dimension(); ++k) {
    const double var = (ds.features.col(k).array() - t.feature_mean[k]).square().sum() / n;
    if (!(var > 0.0)) throw SchemaError("column 'feature_" + std::to_string(k) + "' has zero variance");
    t.feature_scale[k] = std::sqrt(var);
  }
  t.label_mean = ds.labels.mean();
  const double label_var = (ds.labels.array() - t.label_mean).square().mean();
  if (!(label_var > 0.0)) throw SchemaError("column 'label' has zero variance");
  t.label_scale = std::sqrt(label_var);

  TargetDataset out = ds;
  out.features = t.apply_features(ds.features);
  out.labels = t.apply_labels(ds.labels);
  return {std::move(out), std::move(t)};
}

void PiecewiseSpec::validate() const {
  const std::size_t segments = breakpoints.size() + 1;
  if (source_levels.size() != segments || target_levels.size() != segments)
    throw std::invalid_argument("piecewise: need " + std::to_string(segments) +
                                " levels per function for " +
                                std::to_string(breakpoints.size()) + " breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > 0.0 && breakpoints[i] < 1.0))
      throw std::invalid_argument("piecewise: breakpoints must lie in (0, 1)");
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
      throw std::invalid_argument("piecewise: breakpoints must be strictly increasing");
  }
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd))
    throw std::invalid_argument("piecewise: noise_sd must be finite and non-negative");
  if (n_points < 1) throw std::invalid_argument("piecewise: n_points must be positive");
}

std::size_t PiecewiseSpec::segment(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), x) -
                                  breakpoints.begin());
}

PiecewiseData make_piecewise(const PiecewiseSpec& spec) {
  spec.validate();
  Rng rng = make_rng(spec.rng_seed, 0x7069656365ULL);
  std::normal_distribution<double> noise(0.0, 1.0);
  const Index n = spec.n_points;

  PiecewiseData data;
  data.source.name = "piecewise_source";
  data.target.name = "piecewise_target";
  Eigen::VectorXd x(n);
  for (Index i = 0; i < n; ++i) x[i] = uniform_unit(rng);
  for (auto* ds : {&data.source, &data.target}) {
    ds->features = x;
    ds->spatial = x;
    ds->labels.resize(n);
  }
  for (Index i = 0; i < n; ++i) {
    const std::size_t s = spec.segment(x[i]);
    const double e_source = noise(rng);
    const double e_target = noise(rng);
    data.source.labels[i] = spec.source_levels[s] + spec.noise_sd * e_source;
    data.target.labels[i] = spec.target_levels[s] + spec.noise_sd * e_target;
  }
  return data;
}

void SplitSpec::validate() const {
  if (n_labeled < 2) throw std::invalid_argument("split: n_labeled must be at least 2");
  if (n_repeats < 1) throw std::invalid_argument("split: n_repeats must be at least 1");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw std::invalid_argument("split: validation_fraction must lie in (0, 1)");
}

Split split(const TargetDataset& ds, const SplitSpec& spec, Index repeat_index) {
  spec.validate();
  const Index nl = ds.labeled_count();
  if (nl <= spec.n_labeled)
    throw std::invalid_argument("split: " + std::to_string(nl) +
                                " labelled instances cannot supply " +
                                std::to_string(spec.n_labeled) + " training instances plus "
                                "validation and test sets");
  const Index remaining = nl - spec.n_labeled;
  const auto n_val = static_cast<Index>(std::floor(spec.validation_fraction *
                                                   static_cast<double>(remaining)));
  if (n_val < 1 || remaining - n_val < 1)
    throw std::invalid_argument("split: " + std::to_string(nl) +
                                " labelled instances leave an empty validation or test set");

  Rng rng = make_rng(spec.rng_seed, static_cast<std::uint64_t>(repeat_index) + 1);
  const auto perm = sample_without_replacement(rng, static_cast<std::uint64_t>(nl),
                                               static_cast<std::uint64_t>(nl));
  Split s;
  for (Index k = 0; k < nl; ++k) {
    const auto row = static_cast<Index>(perm[static_cast<std::size_t>(k)]);
    if (k < spec.n_labeled) s.train.push_back(row);
    else if (k < spec.n_labeled + n_val) s.validation.push_back(row);
    else s.test.push_back(row);
  }
  for (auto* part : {&s.train, &s.validation, &s.test}) std::sort(part->begin(), part->end());
  s.unlabeled_pool = s.train;
  s.unlabeled_pool.insert(s.unlabeled_pool.end(), s.test.begin(), s.test.end());
  for (Index r = nl; r < ds.size(); ++r) s.unlabeled_pool.push_back(r);
  return s;
}

}  // namespace pstr
