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

// Comparison methods. Every function works on a transductive pool whose first
// `labels.size()` rows are the labelled instances.

#include "pstr/kernels.hpp"
#include "pstr/linalg.hpp"
#include "pstr/smoother.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <cmath>
#include <stdexcept>
#include <string>

namespace pstr {

/// Nadaraya-Watson on the target labels alone.
template <typename Scalar>
Vector<Scalar> target_only(const Matrix<Scalar>& points, const Vector<Scalar>& labels,
                           const Kernel<Scalar>& k_nw) {
  if (labels.size() == 0) throw std::invalid_argument("target_only: no labelled instances");
  return nw_smoother(points.topRows(labels.size()), labels, points, k_nw).fitted();
}

/// Local and global consistency label spreading for real-valued labels:
/// f = (1 - alpha) (I - alpha S)^{-1} y0 with S = D^{-1/2} W D^{-1/2}.
template <typename Scalar>
Vector<Scalar> semisupervised_lgc(const Matrix<Scalar>& points, const Vector<Scalar>& labels,
                                  const Kernel<Scalar>& k_feat, Scalar alpha) {
  if (labels.size() == 0) throw std::invalid_argument("lgc: no labelled instances");
  if (!(alpha > Scalar(0)) || !(alpha < Scalar(1)))
    throw std::invalid_argument("lgc: alpha must lie in (0, 1)");
  const Index n = points.rows();
  Matrix<Scalar> w = Matrix<Scalar>::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) {
      const Scalar v = k_feat(points.row(i) - points.row(j));
      w(i, j) = v;
      w(j, i) = v;
    }
  const Vector<Scalar> degree = w.rowwise().sum();
  for (Index i = 0; i < n; ++i)
    if (!(degree[i] > Scalar(0)))
      throw std::domain_error("lgc: instance " + std::to_string(i) +
                              " is an isolated vertex (zero degree)");
  const Vector<Scalar> inv_sqrt = degree.array().rsqrt().matrix();
  Matrix<Scalar> a = -alpha * (inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal());
  a.diagonal().array() += Scalar(1);
  Vector<Scalar> y0 = Vector<Scalar>::Zero(n);
  y0.head(labels.size()) = labels;
  Eigen::LLT<Matrix<Scalar>> llt(a);
  if (llt.info() != Eigen::Success) throw std::runtime_error("lgc: factorisation failed");
  return (Scalar(1) - alpha) * llt.solve(y0);
}

template <typename Scalar>
struct StackedFit {
  Vector<Scalar> coefficients;  // intercept, source weight, target-NW weight
  Vector<Scalar> predictions;
};

/// Ridge regression on features [1, f_S, f_NW]; the intercept is not
/// penalised and a huge ridge leaves the label mean.
template <typename Scalar>
StackedFit<Scalar> stacked(const Vector<Scalar>& source_preds, const Vector<Scalar>& nw_preds,
                           const Vector<Scalar>& labels, Scalar ridge) {
  const Index nl = labels.size();
  const Index n = source_preds.size();
  if (nl < 3) throw std::invalid_argument("stacked: needs at least 3 labelled instances");
  if (nw_preds.size() != n || nl > n)
    throw std::invalid_argument("stacked: feature vectors do not cover the pool");
  if (!(ridge >= Scalar(0))) throw std::invalid_argument("stacked: ridge must be non-negative");

  Matrix<Scalar> design(n, 3);
  design.col(0).setOnes();
  design.col(1) = source_preds;
  design.col(2) = nw_preds;
  const auto train = design.topRows(nl);

  StackedFit<Scalar> fit;
  if (ridge == Scalar(0)) {
    Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(train);
    if (qr.rank() < 3) throw std::domain_error("stacked: design matrix is rank deficient");
    fit.coefficients = qr.solve(labels);
  } else {
    Matrix<Scalar> normal = train.transpose() * train;
    normal(1, 1) += ridge;
    normal(2, 2) += ridge;
    fit.coefficients = normal.ldlt().solve(train.transpose() * labels);
  }
  fit.predictions = design * fit.coefficients;
  return fit;
}

/// Source predictions plus a Nadaraya-Watson smooth of the labelled
/// residuals y - f_S.
template <typename Scalar>
Vector<Scalar> offset(const Matrix<Scalar>& points, const Vector<Scalar>& labels,
                      const Vector<Scalar>& source_preds, const Kernel<Scalar>& k_nw) {
  const Index nl = labels.size();
  if (nl == 0) throw std::invalid_argument("offset: no labelled instances");
  if (source_preds.size() != points.rows())
    throw std::invalid_argument("offset: source predictions do not cover the pool");
  const Vector<Scalar> residuals = labels - source_preds.head(nl);
  return source_preds + nw_smoother(points.topRows(nl), residuals, points, k_nw).fitted();
}

}  // namespace pstr
