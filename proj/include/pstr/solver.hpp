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

#include "pstr/graph.hpp"
#include "pstr/kernels.hpp"
#include "pstr/linalg.hpp"
#include "pstr/smoother.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <string>

namespace pstr {

template <typename Scalar>
struct PsrtSolution {
  Vector<Scalar> predictions;
  Scalar lambda = Scalar(0);
  Scalar stationarity_residual = Scalar(0);  // ||(I + lambda L) f - M Y||
};

/// ||(I + lambda L) f - g||, the first-order optimality residual.
template <typename Scalar>
Scalar stationarity_residual(const Laplacian<Scalar>& lap, Scalar lambda, const Vector<Scalar>& f,
                             const Vector<Scalar>& g) {
  return (f + lambda * (lap.matrix * f) - g).norm();
}

/// Objective ||f - g||^2 + lambda f'Lf.
template <typename Scalar>
Scalar psrt_objective(const Laplacian<Scalar>& lap, Scalar lambda, const Vector<Scalar>& f,
                      const Vector<Scalar>& g) {
  return (f - g).squaredNorm() + lambda * f.dot(lap.matrix * f);
}

/// Cached Cholesky factor of I + lambda L for repeated right-hand sides.
template <typename Scalar>
class PsrtSystem {
 public:
  PsrtSystem(const Laplacian<Scalar>& lap, Scalar lambda) : lap_(&lap), lambda_(lambda) {
    if (!(lambda >= Scalar(0)) || !std::isfinite(lambda))
      throw std::invalid_argument("solve_psrt: lambda must be finite and non-negative");
    if (lambda == Scalar(0)) return;
    Matrix<Scalar> a = lambda * lap.matrix;
    a.diagonal().array() += Scalar(1);
    llt_.compute(a);
    if (llt_.info() != Eigen::Success)
      throw std::runtime_error("solve_psrt: I + lambda L is not positive definite");
  }

  Index size() const { return lap_->matrix.rows(); }
  Scalar lambda() const { return lambda_; }

  /// Solves (I + lambda L) f = g with one step of iterative refinement.
  Vector<Scalar> solve(const Vector<Scalar>& g) const {
    if (g.size() != size())
      throw std::invalid_argument("solve_psrt: right-hand side has " + std::to_string(g.size()) +
                                  " entries, Laplacian has " + std::to_string(size()) + " nodes");
    if (lambda_ == Scalar(0)) return g;
    Vector<Scalar> f = llt_.solve(g);
    const Vector<Scalar> r = g - f - lambda_ * (lap_->matrix * f);
    f += llt_.solve(r);
    if (!f.allFinite()) throw std::runtime_error("solve_psrt: solution is not finite");
    return f;
  }

 private:
  const Laplacian<Scalar>* lap_;
  Scalar lambda_;
  Eigen::LLT<Matrix<Scalar>> llt_;
};

/// f = (I + lambda L)^{-1} g through an SPD factorisation.
template <typename Scalar>
Vector<Scalar> solve_psrt(const Vector<Scalar>& g, const Laplacian<Scalar>& lap, Scalar lambda) {
  return PsrtSystem<Scalar>(lap, lambda).solve(g);
}

template <typename Scalar>
PsrtSolution<Scalar> solve_psrt(const NwSmoother<Scalar>& smoother, const Laplacian<Scalar>& lap,
                                Scalar lambda) {
  if (smoother.weights.rows() != lap.matrix.rows())
    throw std::invalid_argument("solve_psrt: smoother predicts " +
                                std::to_string(smoother.weights.rows()) +
                                " points but the Laplacian has " +
                                std::to_string(lap.matrix.rows()) + " nodes");
  const Vector<Scalar> g = smoother.fitted();
  PsrtSolution<Scalar> out;
  out.lambda = lambda;
  out.predictions = solve_psrt(g, lap, lambda);
  out.stationarity_residual = stationarity_residual(lap, lambda, out.predictions, g);
  return out;
}

/// Nadaraya-Watson extension of transductive predictions to new points.
template <typename DerivedX, typename DerivedF, typename DerivedP,
          typename Scalar = typename DerivedX::Scalar>
Vector<Scalar> extend_out_of_sample(const Eigen::MatrixBase<DerivedX>& fitted_points,
                                    const Eigen::MatrixBase<DerivedF>& fitted_values,
                                    const Eigen::MatrixBase<DerivedP>& new_points,
                                    const Kernel<Scalar>& kernel) {
  if (new_points.rows() == 0) return Vector<Scalar>(0);
  return nw_predict(fitted_points, fitted_values, new_points, kernel);
}

/// Spectral norm of a symmetric matrix (largest absolute eigenvalue).
template <typename Scalar>
Scalar symmetric_spectral_norm(const Matrix<Scalar>& a) {
  if (a.size() == 0) return Scalar(0);
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// Ingredients of the error bound relating the source-graph solution to the
/// one built from the true target function. Nothing here asserts the bound.
template <typename Scalar>
struct BoundDiagnostics {
  Scalar source_error = 0;        // ||f_S - f*||, f_S solved with L_S
  Scalar target_error = 0;        // ||f_T - f*||, f_T solved with L_T
  Scalar laplacian_gap = 0;       // lambda ||L_S - L_T||_2
  Scalar laplacian_distance = 0;  // ||L_S - L_T||_2
  Scalar nw_error = 0;            // ||f* - f_NW||
  Vector<Scalar> with_source;     // f_S
  Vector<Scalar> with_target;     // f_T
  Vector<Scalar> nadaraya_watson; // f_NW
};

/// Points are the full transductive set; the first `labels.size()` rows are
/// the labelled ones.
template <typename Scalar>
BoundDiagnostics<Scalar> bound_diagnostics(const Matrix<Scalar>& points,
                                           const Vector<Scalar>& labels,
                                           const Vector<Scalar>& source_preds,
                                           const Vector<Scalar>& oracle_target,
                                           const Kernel<Scalar>& k1,
                                           const Kernel<Scalar>& k_nw, Scalar lambda) {
  const Index n = points.rows();
  if (source_preds.size() != n || oracle_target.size() != n)
    throw std::invalid_argument("bound_diagnostics: predictions do not cover every instance");
  const Index nl = labels.size();
  const auto smoother = nw_smoother(points.topRows(nl), labels, points, k_nw);
  const Laplacian<Scalar> ls = laplacian(build_similarity_graph(source_preds, k1));
  const Laplacian<Scalar> lt = laplacian(build_similarity_graph(oracle_target, k1));

  BoundDiagnostics<Scalar> d;
  d.nadaraya_watson = smoother.fitted();
  d.with_source = solve_psrt(d.nadaraya_watson, ls, lambda);
  d.with_target = solve_psrt(d.nadaraya_watson, lt, lambda);
  d.source_error = (d.with_source - oracle_target).norm();
  d.target_error = (d.with_target - oracle_target).norm();
  d.laplacian_distance = symmetric_spectral_norm<Scalar>(ls.matrix - lt.matrix);
  d.laplacian_gap = lambda * d.laplacian_distance;
  d.nw_error = (oracle_target - d.nadaraya_watson).norm();
  return d;
}

}  // namespace pstr
