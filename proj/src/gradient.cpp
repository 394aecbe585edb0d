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

#include "pstr/gradient.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pstr {

void GridSpec::validate() const {
  if (lower.empty()) throw std::invalid_argument("gradient grid needs at least one axis");
  if (upper.size() != lower.size() || resolution.size() != lower.size())
    throw std::invalid_argument("gradient grid bounds and resolution differ in length");
  for (std::size_t a = 0; a < lower.size(); ++a) {
    if (!std::isfinite(lower[a]) || !std::isfinite(upper[a]) || upper[a] < lower[a])
      throw std::invalid_argument("gradient grid axis " + std::to_string(a) + " has bad bounds");
    if (resolution[a] < 1)
      throw std::invalid_argument("gradient grid resolution must be at least 1");
  }
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("finite-difference step must be positive");
}

namespace {

Eigen::MatrixXd lattice(const GridSpec& spec) {
  const auto d = static_cast<Eigen::Index>(spec.dimension());
  Eigen::Index count = 1;
  for (auto r : spec.resolution) count *= r;
  Eigen::MatrixXd pts(count, d);
  for (Eigen::Index k = 0; k < count; ++k) {
    Eigen::Index rest = k;
    for (Eigen::Index a = 0; a < d; ++a) {
      const auto res = spec.resolution[static_cast<std::size_t>(a)];
      const auto i = rest % res;
      rest /= res;
      const double lo = spec.lower[static_cast<std::size_t>(a)];
      const double hi = spec.upper[static_cast<std::size_t>(a)];
      pts(k, a) = res == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (res - 1);
    }
  }
  return pts;
}

}  // namespace

GradientGrid gradient_grid(const std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>& f,
                           const GridSpec& spec) {
  spec.validate();
  GradientGrid out;
  out.points = lattice(spec);
  const Eigen::Index n = out.points.rows(), d = out.points.cols();
  Eigen::MatrixXd squared = Eigen::MatrixXd::Zero(n, 1);
  for (Eigen::Index a = 0; a < d; ++a) {
    Eigen::MatrixXd plus = out.points, minus = out.points;
    plus.col(a).array() += spec.step;
    minus.col(a).array() -= spec.step;
    const Eigen::VectorXd fp = f(plus), fm = f(minus);
    if (fp.size() != n || fm.size() != n)
      throw std::runtime_error("predictor returned the wrong number of values");
    const Eigen::VectorXd diff = (fp - fm) / (2.0 * spec.step);
    if (!diff.allFinite())
      throw std::runtime_error("predictor failed near grid axis " + std::to_string(a));
    squared.col(0).array() += diff.array().square();
  }
  out.magnitude = squared.col(0).array().sqrt();
  return out;
}

GradientGrid gradient_grid(const std::function<double(const Eigen::VectorXd&)>& f,
                           const GridSpec& spec) {
  return gradient_grid(
      [&f](const Eigen::MatrixXd& pts) {
        Eigen::VectorXd v(pts.rows());
        for (Eigen::Index r = 0; r < pts.rows(); ++r) v[r] = f(pts.row(r).transpose());
        return v;
      },
      spec);
}

void write_gradient_csv(const GradientGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (Eigen::Index a = 0; a < grid.points.cols(); ++a) out << 'x' << a + 1 << ',';
  out << "gradient_norm\n";
  char buf[64];
  auto put = [&](double v) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, end - buf);
  };
  for (Eigen::Index r = 0; r < grid.points.rows(); ++r) {
    for (Eigen::Index a = 0; a < grid.points.cols(); ++a) {
      put(grid.points(r, a));
      out << ',';
    }
    put(grid.magnitude[r]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

}  // namespace pstr
