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

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pstr {

enum class KernelFamily { gaussian, uniform, epanechnikov };

inline KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "uniform") return KernelFamily::uniform;
  if (name == "epanechnikov") return KernelFamily::epanechnikov;
  throw std::invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

inline std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::uniform: return "uniform";
    case KernelFamily::epanechnikov: return "epanechnikov";
  }
  return "gaussian";
}

/// Max-normalised radial kernel: k(0) = 1, values in [0, 1], non-increasing in |d|.
/// Used both for graph edge weights and Nadaraya-Watson weights, where
/// normalising constants cancel.
template <typename Scalar>
struct Kernel {
  KernelFamily family = KernelFamily::gaussian;
  Scalar bandwidth = Scalar(1);

  /// Kernel value at a distance r >= 0.
  Scalar of_distance(Scalar r) const {
    if (!(bandwidth > Scalar(0)) || !std::isfinite(bandwidth))
      throw std::invalid_argument("kernel bandwidth must be positive and finite");
    if (!std::isfinite(r)) throw std::domain_error("kernel argument is not finite");
    const Scalar u = r / bandwidth;
    switch (family) {
      case KernelFamily::gaussian: return std::exp(Scalar(-0.5) * u * u);
      case KernelFamily::uniform: return u <= Scalar(1) ? Scalar(1) : Scalar(0);
      case KernelFamily::epanechnikov: return std::max(Scalar(0), Scalar(1) - u * u);
    }
    return Scalar(0);
  }

  Scalar operator()(Scalar d) const { return of_distance(std::abs(d)); }

  /// Vector argument: the kernel of the Euclidean norm.
  template <typename Derived>
  Scalar operator()(const Eigen::MatrixBase<Derived>& d) const {
    return of_distance(static_cast<Scalar>(d.norm()));
  }
};

template <typename Scalar>
Kernel<Scalar> make_kernel(KernelFamily family, Scalar bandwidth) {
  if (!(bandwidth > Scalar(0)) || !std::isfinite(bandwidth))
    throw std::invalid_argument("kernel bandwidth must be positive and finite");
  return Kernel<Scalar>{family, bandwidth};
}

template <typename Scalar>
Scalar eval(const Kernel<Scalar>& kernel, Scalar d) {
  return kernel(d);
}

template <typename Scalar, typename Derived>
Scalar eval(const Kernel<Scalar>& kernel, const Eigen::MatrixBase<Derived>& d) {
  return kernel(d);
}

/// Median of the strictly positive entries (mean of the two middle values for
/// an even count). Zero distances are ignored.
template <typename Scalar>
Scalar median_heuristic(std::span<const Scalar> distances) {
  std::vector<Scalar> positive;
  positive.reserve(distances.size());
  for (Scalar d : distances) {
    if (!std::isfinite(d)) throw std::domain_error("median_heuristic: non-finite distance");
    if (d > Scalar(0)) positive.push_back(d);
  }
  if (positive.empty())
    throw std::invalid_argument("median_heuristic: all distances are zero (degenerate data)");
  const std::size_t mid = positive.size() / 2;
  std::nth_element(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(mid),
                   positive.end());
  const Scalar upper = positive[mid];
  if (positive.size() % 2 == 1) return upper;
  const Scalar lower =
      *std::max_element(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / Scalar(2);
}

/// Euclidean distances between all unordered row pairs (i < j), row-major order.
template <typename Derived>
std::vector<typename Derived::Scalar> pairwise_distances(const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  const Index n = points.rows();
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out.push_back((points.row(i) - points.row(j)).norm());
  return out;
}

/// Multipliers applied to the median heuristic when tuning a bandwidth.
inline constexpr std::array<double, 5> kBandwidthMultipliers{0.25, 0.5, 1.0, 2.0, 4.0};

template <typename Scalar>
std::vector<Scalar> bandwidth_grid(Scalar center) {
  std::vector<Scalar> grid;
  for (double m : kBandwidthMultipliers) grid.push_back(center * static_cast<Scalar>(m));
  return grid;
}

}  // namespace pstr
