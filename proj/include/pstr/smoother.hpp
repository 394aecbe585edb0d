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

#include "pstr/kernels.hpp"
#include "pstr/linalg.hpp"

#include <stdexcept>
#include <string>

namespace pstr {

/// Row-stochastic Nadaraya-Watson smoothing matrix M = D^{-1} W over m
/// prediction points and n labelled points, together with the labels.
template <typename Scalar>
struct NwSmoother {
  Matrix<Scalar> weights;  // m x n, rows sum to one
  Vector<Scalar> labels;   // n

  /// M Y, the plain Nadaraya-Watson predictions.
  Vector<Scalar> fitted() const { return weights * labels; }
};

/// Builds M for `predict_points` (m x d) against `labeled_points` (n x d).
/// Throws if a prediction point receives zero total weight.
template <typename DerivedX, typename DerivedY, typename DerivedP,
          typename Scalar = typename DerivedX::Scalar>
NwSmoother<Scalar> nw_smoother(const Eigen::MatrixBase<DerivedX>& labeled_points,
                               const Eigen::MatrixBase<DerivedY>& labels,
                               const Eigen::MatrixBase<DerivedP>& predict_points,
                               const Kernel<Scalar>& kernel) {
  const Index n = labeled_points.rows();
  const Index m = predict_points.rows();
  if (n == 0) throw std::invalid_argument("nw_smoother: no labelled instances");
  if (labels.size() != n)
    throw std::invalid_argument("nw_smoother: " + std::to_string(labels.size()) +
                                " labels for " + std::to_string(n) + " labelled instances");
  if (predict_points.cols() != labeled_points.cols())
    throw std::invalid_argument("nw_smoother: feature dimension mismatch");

  NwSmoother<Scalar> s{Matrix<Scalar>(m, n), labels};
  for (Index i = 0; i < m; ++i) {
    Scalar total(0);
    for (Index j = 0; j < n; ++j) {
      const Scalar w = kernel(predict_points.row(i) - labeled_points.row(j));
      s.weights(i, j) = w;
      total += w;
    }
    if (!(total > Scalar(0)))
      throw std::domain_error("nw_smoother: prediction point " + std::to_string(i) +
                              " has zero kernel weight to every labelled instance "
                              "(bandwidth too small)");
    s.weights.row(i) /= total;
  }
  return s;
}

/// Nadaraya-Watson predictions at `predict_points` without keeping M.
template <typename DerivedX, typename DerivedY, typename DerivedP,
          typename Scalar = typename DerivedX::Scalar>
Vector<Scalar> nw_predict(const Eigen::MatrixBase<DerivedX>& labeled_points,
                          const Eigen::MatrixBase<DerivedY>& labels,
                          const Eigen::MatrixBase<DerivedP>& predict_points,
                          const Kernel<Scalar>& kernel) {
  return nw_smoother(labeled_points, labels, predict_points, kernel).fitted();
}

}  // namespace pstr
