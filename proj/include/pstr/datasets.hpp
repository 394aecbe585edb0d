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

#include "pstr/linalg.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pstr {

/// Target-domain data. Rows [0, labeled_count()) of `features` (and
/// `spatial`) are the labelled instances, the remaining rows are unlabelled.
/// `spatial` has zero columns when no spatial channel exists.
struct TargetDataset {
  std::string name;
  Eigen::MatrixXd features;
  Eigen::MatrixXd spatial;
  Eigen::VectorXd labels;

  Index size() const { return features.rows(); }
  Index labeled_count() const { return labels.size(); }
  Index unlabeled_count() const { return size() - labeled_count(); }
  Index dimension() const { return features.cols(); }
  bool has_spatial() const { return spatial.cols() > 0; }

  /// Throws if the row/column invariants do not hold.
  void validate() const;

  /// New dataset whose labelled rows are `labeled` (indices of labelled rows
  /// here) and whose unlabelled rows are `unlabeled` (any row indices; labels
  /// of labelled rows are hidden).
  TargetDataset subset(const std::vector<Index>& labeled, const std::vector<Index>& unlabeled) const;
};

/// Malformed CSV input; `row()` is the 1-based line number in the file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : std::runtime_error("line " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CsvSchema {
  std::vector<std::string> feature_columns;
  std::vector<std::string> spatial_columns;
  std::string label_column = "label";

  /// feature_*, spatial_* and label columns in header order.
  static CsvSchema detect(const std::vector<std::string>& header);
};

TargetDataset load_csv(const std::filesystem::path& path, const CsvSchema& schema);
/// Uses CsvSchema::detect on the file header.
TargetDataset load_csv(const std::filesystem::path& path);
/// Shortest round-trip decimal formatting; unlabelled rows get an empty label.
void write_csv(const TargetDataset& ds, const std::filesystem::path& path);

/// Mean / population-sd transform of features (over every row) and labels
/// (over labelled rows). Spatial coordinates are left unchanged.
struct Standardization {
  Eigen::VectorXd feature_mean;
  Eigen::VectorXd feature_scale;
  double label_mean = 0.0;
  double label_scale = 1.0;

  Eigen::MatrixXd apply_features(const Eigen::MatrixXd& features) const;
  Eigen::VectorXd apply_labels(const Eigen::VectorXd& labels) const;
  Eigen::VectorXd invert_labels(const Eigen::VectorXd& standardized) const;
};

std::pair<TargetDataset, Standardization> standardize(const TargetDataset& ds);

/// Piecewise-constant source and target functions on [0, 1] sharing the same
/// breakpoints.
struct PiecewiseSpec {
  std::vector<double> breakpoints{0.3, 0.6};
  std::vector<double> source_levels{0.0, 1.0, 0.5};
  std::vector<double> target_levels{1.0, 0.2, 0.8};
  double noise_sd = 0.05;
  Index n_points = 500;
  std::uint64_t rng_seed = 0;

  void validate() const;
  /// Segment index of x in [0, 1].
  std::size_t segment(double x) const;
};

struct PiecewiseData {
  TargetDataset source;  // fully labelled
  TargetDataset target;  // fully labelled; splits hide labels
};

/// One uniform x sample shared by both sets, independent noise per set;
/// the spatial channel is x itself.
PiecewiseData make_piecewise(const PiecewiseSpec& spec);

struct SplitSpec {
  Index n_labeled = 20;
  double validation_fraction = 0.2;
  Index n_repeats = 30;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Indices into the dataset rows. train/validation/test partition the
/// labelled rows; `unlabeled_pool` is train ∪ test ∪ the dataset's
/// unlabelled rows, the instance set a transductive method sees.
struct Split {
  std::vector<Index> train;
  std::vector<Index> validation;
  std::vector<Index> test;
  std::vector<Index> unlabeled_pool;
};

/// Deterministic in (spec.rng_seed, repeat_index). Validation gets
/// floor(validation_fraction * (labelled - n_labeled)) rows, test the rest.
Split split(const TargetDataset& ds, const SplitSpec& spec, Index repeat_index);

}  // namespace pstr
