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

#include "pstr/source.hpp"

#include "pstr/smoother.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace pstr {

SourcePredictor SourcePredictor::from_model(Eigen::MatrixXd features, Eigen::VectorXd labels,
                                            Kernel<double> kernel) {
  if (features.rows() == 0 || features.rows() != labels.size())
    throw std::invalid_argument("source model needs one label per source instance");
  SourcePredictor p;
  p.features_ = std::move(features);
  p.labels_ = std::move(labels);
  p.kernel_ = kernel;
  return p;
}

SourcePredictor SourcePredictor::from_values(Eigen::VectorXd values) {
  if (!values.allFinite()) throw std::domain_error("source predictions are not finite");
  SourcePredictor p;
  p.values_ = std::move(values);
  return p;
}

Eigen::VectorXd SourcePredictor::predict(const Eigen::MatrixXd& features) const {
  if (values_) {
    if (features.rows() != values_->size())
      throw std::invalid_argument("source prediction vector has " +
                                  std::to_string(values_->size()) + " entries but " +
                                  std::to_string(features.rows()) + " instances were queried");
    return *values_;
  }
  return nw_predict(features_, labels_, features, kernel_);
}

double nw_loo_error(const Eigen::MatrixXd& features, const Eigen::VectorXd& labels,
                    const Kernel<double>& kernel) {
  const Index n = features.rows();
  Eigen::VectorXd num = Eigen::VectorXd::Zero(n), den = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double w = kernel(features.row(i) - features.row(j));
      num[i] += w * labels[j];
      den[i] += w;
      num[j] += w * labels[i];
      den[j] += w;
    }
  double sse = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (!(den[i] > 0.0)) return std::numeric_limits<double>::infinity();
    const double r = labels[i] - num[i] / den[i];
    sse += r * r;
  }
  return sse / static_cast<double>(n);
}

Kernel<double> select_source_kernel(const Eigen::MatrixXd& features,
                                    const Eigen::VectorXd& labels, KernelFamily family) {
  if (features.rows() < 2) throw std::invalid_argument("source model needs two instances");
  const auto distances = pairwise_distances(features);
  const double center = median_heuristic<double>(distances);
  Kernel<double> best{family, center};
  double best_error = std::numeric_limits<double>::infinity();
  for (double m : {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0, 2.0}) {
    const Kernel<double> k{family, center * m};
    const double e = nw_loo_error(features, labels, k);
    if (e < best_error) {
      best_error = e;
      best = k;
    }
  }
  return best;
}

}  // namespace pstr
