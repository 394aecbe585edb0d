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
#include "pstr/linalg.hpp"
#include "pstr/random.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pstr {

/// Column sample of the graph for a low-rank approximation
///   W + s I  ~  C B^+ C'.
///
/// `self_weight` s puts the self-similarity k(0) = 1 back on the diagonal of
/// the sampled columns. The solver adds s to the degrees as well, keeping
/// L = (D + sI) - (W + sI).
template <typename Scalar>
struct NystromSketch {
  std::vector<Index> indices;  // sampled columns, in sampling order
  Matrix<Scalar> columns;      // C, n x p
  Matrix<Scalar> corner;       // B, p x p: rows of C at `indices`
  Scalar self_weight = Scalar(1);
  Scalar jitter = Scalar(0);   // added to B only if the inner system is singular

  Index rank() const { return static_cast<Index>(indices.size()); }
};

template <typename Scalar>
Scalar default_jitter(const Matrix<Scalar>& corner) {
  const Index p = corner.rows();
  if (p == 0) return Scalar(0);
  Scalar scale = corner.trace() / static_cast<Scalar>(p);
  if (!(scale > Scalar(0))) scale = corner.cwiseAbs().maxCoeff();
  if (!(scale > Scalar(0))) scale = Scalar(1);
  return Scalar(1e-10) * scale;
}

/// Sketch from explicit column indices. `jitter < 0` picks the default
/// 1e-10 * trace(B) / p.
template <typename Scalar>
NystromSketch<Scalar> sketch_from_indices(const SimilarityGraph<Scalar>& g,
                                          std::vector<Index> indices,
                                          Scalar self_weight = Scalar(1),
                                          Scalar jitter = Scalar(-1)) {
  const Index n = g.size();
  const auto p = static_cast<Index>(indices.size());
  if (p < 1 || p > n)
    throw std::invalid_argument("nystrom: sample size " + std::to_string(p) +
                                " outside [1, " + std::to_string(n) + "]");
  NystromSketch<Scalar> s;
  s.self_weight = self_weight;
  s.columns.resize(n, p);
  for (Index k = 0; k < p; ++k) {
    const Index c = indices[static_cast<std::size_t>(k)];
    if (c < 0 || c >= n) throw std::out_of_range("nystrom: column index out of range");
    s.columns.col(k) = g.weights.col(c);
    s.columns(c, k) += self_weight;
  }
  s.corner.resize(p, p);
  for (Index k = 0; k < p; ++k) s.corner.row(k) = s.columns.row(indices[static_cast<std::size_t>(k)]);
  s.jitter = jitter < Scalar(0) ? default_jitter(s.corner) : jitter;
  s.indices = std::move(indices);
  return s;
}

/// p distinct columns drawn uniformly without replacement.
template <typename Scalar>
NystromSketch<Scalar> sample_sketch(const SimilarityGraph<Scalar>& g, Index p, std::uint64_t seed,
                                    Scalar self_weight = Scalar(1), Scalar jitter = Scalar(-1)) {
  const Index n = g.size();
  if (p < 1 || p > n)
    throw std::invalid_argument("nystrom: sample size " + std::to_string(p) +
                                " outside [1, " + std::to_string(n) + "]");
  Rng rng = make_rng(seed, 0x6e7973ULL);
  std::vector<Index> indices;
  for (auto c : sample_without_replacement(rng, static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(p)))
    indices.push_back(static_cast<Index>(c));
  return sketch_from_indices(g, std::move(indices), self_weight, jitter);
}

/// Number of sampled columns for a fraction of n, at least one.
inline Index sketch_size(Index n, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("nystrom fraction must lie in (0, 1]");
  const auto p = static_cast<Index>(std::llround(fraction * static_cast<double>(n)));
  return std::clamp<Index>(p, 1, n);
}

/// Applies V ~ (M^{-1} - lambda C B^+ C')^{-1} to g by the Woodbury identity,
///   V = M + M C (B / lambda - C' M C)^{-1} C' M,
/// with M given by its diagonal. B is regularised by `jitter` I (escalating
/// x100 per retry) only when the p x p inner system is numerically singular.
template <typename Scalar>
Vector<Scalar> woodbury_solve(const Matrix<Scalar>& columns, const Matrix<Scalar>& corner,
                              const Vector<Scalar>& m_diag, Scalar lambda,
                              const Vector<Scalar>& g, Scalar jitter) {
  if (!(lambda > Scalar(0)))
    throw std::invalid_argument("nystrom: lambda must be positive");
  const Index n = columns.rows();
  const Index p = columns.cols();
  if (g.size() != n || m_diag.size() != n)
    throw std::invalid_argument("nystrom: right-hand side does not match the sketch");

  const Vector<Scalar> mg = m_diag.cwiseProduct(g);
  const Matrix<Scalar> mc = m_diag.asDiagonal() * columns;
  Matrix<Scalar> inner = corner / lambda;
  inner.noalias() -= columns.transpose() * mc;
  const Vector<Scalar> rhs = columns.transpose() * mg;

  const Scalar singular = static_cast<Scalar>(p) * std::numeric_limits<Scalar>::epsilon();
  Scalar added = Scalar(0);
  Scalar step = jitter > Scalar(0) ? jitter : default_jitter(corner);
  for (int attempt = 0; attempt < 7; ++attempt) {
    Eigen::PartialPivLU<Matrix<Scalar>> lu(inner);
    if (lu.rcond() > singular) {
      Vector<Scalar> out = mg + mc * lu.solve(rhs);
      if (out.allFinite()) return out;
    }
    inner.diagonal().array() += (step - added) / lambda;
    added = step;
    step *= Scalar(100);
  }
  throw std::runtime_error(
      "nystrom: Woodbury inner system is singular even with jitter; "
      "increase the sample size p or the jitter");
}

/// Approximate solution of (I + lambda L) f = g from a sketch. `degrees` are
/// the exact row sums of the full zero-diagonal W.
template <typename Scalar>
Vector<Scalar> approx_solve(const NystromSketch<Scalar>& sketch, const Vector<Scalar>& degrees,
                            Scalar lambda, const Vector<Scalar>& g) {
  if (degrees.size() != sketch.columns.rows())
    throw std::invalid_argument("nystrom: degree vector does not match the sketch");
  const Vector<Scalar> m_diag =
      (Scalar(1) + lambda * (degrees.array() + sketch.self_weight)).inverse().matrix();
  return woodbury_solve(sketch.columns, sketch.corner, m_diag, lambda, g, sketch.jitter);
}

}  // namespace pstr
