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

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace pstr {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Rows of `m` listed in `rows`, in that order.
template <typename Derived>
Matrix<typename Derived::Scalar> select_rows(const Eigen::MatrixBase<Derived>& m,
                                             const std::vector<Index>& rows) {
  Matrix<typename Derived::Scalar> out(static_cast<Index>(rows.size()), m.cols());
  for (Index r = 0; r < out.rows(); ++r) out.row(r) = m.row(rows[static_cast<std::size_t>(r)]);
  return out;
}

template <typename Derived>
Vector<typename Derived::Scalar> select_entries(const Eigen::MatrixBase<Derived>& v,
                                                const std::vector<Index>& entries) {
  Vector<typename Derived::Scalar> out(static_cast<Index>(entries.size()));
  for (Index r = 0; r < out.size(); ++r) out[r] = v[entries[static_cast<std::size_t>(r)]];
  return out;
}

}  // namespace pstr
