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
#include "pstr/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pstr {

/// Dense symmetric weight matrix over the transductive instance set. Entries
/// lie in [0, 1] and the diagonal is zero.
template <typename Scalar>
struct SimilarityGraph {
  Matrix<Scalar> weights;

  Index size() const { return weights.rows(); }
};

template <typename Scalar>
struct Laplacian {
  Matrix<Scalar> matrix;   // D - W
  Vector<Scalar> degrees;  // row sums of W
};

using IndexPair = std::pair<Index, Index>;

/// Binary pairwise constraints. Pairs are unordered; (i, j) and (j, i) are the
/// same constraint.
struct GuidanceSet {
  std::vector<IndexPair> similar;
  std::vector<IndexPair> dissimilar;

  bool empty() const { return similar.empty() && dissimilar.empty(); }
};

namespace detail {

inline IndexPair ordered(IndexPair p) {
  return p.first <= p.second ? p : IndexPair{p.second, p.first};
}

inline std::vector<IndexPair> normalized(const std::vector<IndexPair>& pairs) {
  std::vector<IndexPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(ordered(p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Throws if the set breaks its invariants or references nodes outside [0, n).
inline void validate_guidance(const GuidanceSet& guide, Index n) {
  auto check = [n](const std::vector<IndexPair>& pairs) {
    for (const auto& [i, j] : pairs) {
      if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("guidance pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") is outside a graph of " + std::to_string(n) + " nodes");
      if (i == j) throw std::invalid_argument("guidance pair (" + std::to_string(i) + "," +
                                              std::to_string(j) + ") is a self pair");
    }
  };
  check(guide.similar);
  check(guide.dissimilar);
  const auto s = detail::normalized(guide.similar);
  const auto d = detail::normalized(guide.dissimilar);
  std::vector<IndexPair> both;
  std::set_intersection(s.begin(), s.end(), d.begin(), d.end(), std::back_inserter(both));
  if (!both.empty())
    throw std::invalid_argument("guidance pair (" + std::to_string(both.front().first) + "," +
                                std::to_string(both.front().second) +
                                ") is marked both similar and dissimilar");
}

/// W_ij = k1(p_i - p_j) for i != j, zero diagonal.
template <typename Derived, typename Scalar = typename Derived::Scalar>
SimilarityGraph<Scalar> build_similarity_graph(const Eigen::MatrixBase<Derived>& source_preds,
                                               const Kernel<Scalar>& k1) {
  const Index n = source_preds.size();
  if (!source_preds.allFinite())
    throw std::domain_error("build_similarity_graph: source predictions are not finite");
  SimilarityGraph<Scalar> g{Matrix<Scalar>::Zero(n, n)};
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) {
      const Scalar w = k1(source_preds[i] - source_preds[j]);
      g.weights(i, j) = w;
      g.weights(j, i) = w;
    }
  return g;
}

/// Entrywise product with a kernel over spatial coordinates (one row per node).
template <typename Scalar, typename Derived>
SimilarityGraph<Scalar> apply_spatial(SimilarityGraph<Scalar> g,
                                      const Eigen::MatrixBase<Derived>& spatial,
                                      const Kernel<Scalar>& k2) {
  const Index n = g.size();
  if (spatial.rows() != n || spatial.cols() == 0)
    throw std::invalid_argument("apply_spatial: spatial coordinates missing for " +
                                std::to_string(n) + " graph nodes (got " +
                                std::to_string(spatial.rows()) + " rows, " +
                                std::to_string(spatial.cols()) + " columns)");
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) {
      if (g.weights(i, j) == Scalar(0)) continue;
      const Scalar w = g.weights(i, j) * k2(spatial.row(i) - spatial.row(j));
      g.weights(i, j) = w;
      g.weights(j, i) = w;
    }
  return g;
}

/// Overwrites the listed entries with 1 (similar) or 0 (dissimilar), both
/// orientations. Everything else is left untouched.
template <typename Scalar>
SimilarityGraph<Scalar> apply_guidance(SimilarityGraph<Scalar> g, const GuidanceSet& guide) {
  validate_guidance(guide, g.size());
  for (const auto& [i, j] : guide.similar) {
    g.weights(i, j) = Scalar(1);
    g.weights(j, i) = Scalar(1);
  }
  for (const auto& [i, j] : guide.dissimilar) {
    g.weights(i, j) = Scalar(0);
    g.weights(j, i) = Scalar(0);
  }
  return g;
}

/// Simulated expert guidance from ground-truth labels.
///
/// Samples round(fraction * N) of the N = n(n-1)/2 unordered pairs without
/// replacement. A sampled pair is similar when its absolute label gap is at
/// most the nearest-rank `percentile` of all N gaps, i.e. the gap of rank
/// clamp(round(percentile/100 * N), 1, N) in ascending order; otherwise it
/// is dissimilar. Output pairs are (i < j) and sorted.
template <typename Derived>
GuidanceSet simulate_oracle_guidance(const Eigen::MatrixBase<Derived>& labels, double fraction,
                                     double percentile, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("simulate_oracle_guidance: fraction must lie in (0, 1]");
  if (!(percentile > 0.0) || percentile > 100.0)
    throw std::invalid_argument("simulate_oracle_guidance: percentile must lie in (0, 100]");
  const Index n = labels.size();
  GuidanceSet guide;
  if (n < 2) return guide;

  const auto pair_count = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
  std::vector<double> gaps;
  gaps.reserve(pair_count);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      gaps.push_back(std::abs(static_cast<double>(labels[i]) - static_cast<double>(labels[j])));

  const auto rank = std::clamp<std::uint64_t>(
      static_cast<std::uint64_t>(std::llround(percentile / 100.0 * static_cast<double>(pair_count))),
      1, pair_count);
  std::vector<double> sorted = gaps;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   sorted.end());
  const double threshold = sorted[rank - 1];

  const auto count = std::clamp<std::uint64_t>(
      static_cast<std::uint64_t>(std::llround(fraction * static_cast<double>(pair_count))), 1,
      pair_count);
  Rng rng = make_rng(seed, 0x6775696465ULL);
  std::vector<std::uint64_t> picked = sample_without_replacement(rng, pair_count, count);
  std::sort(picked.begin(), picked.end());

  // Walk the row-major pair enumeration once, matching sorted linear indices.
  std::size_t next = 0;
  std::uint64_t linear = 0;
  for (Index i = 0; i < n && next < picked.size(); ++i)
    for (Index j = i + 1; j < n && next < picked.size(); ++j, ++linear) {
      if (picked[next] != linear) continue;
      ++next;
      (gaps[linear] <= threshold ? guide.similar : guide.dissimilar).emplace_back(i, j);
    }
  return guide;
}

template <typename Scalar>
Laplacian<Scalar> laplacian(const SimilarityGraph<Scalar>& g) {
  Laplacian<Scalar> lap;
  lap.degrees = g.weights.rowwise().sum();
  lap.matrix = -g.weights;
  lap.matrix.diagonal() += lap.degrees;
  return lap;
}

}  // namespace pstr
