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

#include "oracles.hpp"

#include <pstr/baselines.hpp>
#include <pstr/graph.hpp>
#include <pstr/solver.hpp>

#include <doctest.h>

using namespace pstr;

namespace {

const Kernel<double> kUnitGaussian{KernelFamily::gaussian, 1.0};

Eigen::MatrixXd gaussian_graph(const Eigen::MatrixXd& x, double h) {
  const Index n = x.rows();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) w(i, j) = oracle::gaussian(Eigen::VectorXd(x.row(i) - x.row(j)), h);
  return w;
}

}  // namespace

TEST_CASE("target only is plain Nadaraya-Watson") {
  oracle::Gen gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = gen.integer(5, 40), nl = gen.integer(1, static_cast<int>(n));
    const Eigen::MatrixXd x = gen.matrix(n, gen.integer(1, 3));
    const Eigen::VectorXd y = gen.vector(nl, -2, 2);
    const double h = gen.uniform(0.3, 2.0);
    const Kernel<double> k{KernelFamily::gaussian, h};
    const Eigen::VectorXd f = target_only(x, y, k);
    CHECK((f - oracle::nadaraya_watson(x.topRows(nl), y, x, h)).cwiseAbs().maxCoeff() <= 1e-10);
    const auto lap = laplacian(build_similarity_graph(gen.vector(n), kUnitGaussian));
    CHECK(f == solve_psrt(nw_smoother(x.topRows(nl), y, x, k), lap, 0.0).predictions);
  }
  const Eigen::MatrixXd x = gen.matrix(6, 1);
  CHECK((target_only(x, Eigen::VectorXd(Eigen::VectorXd::Constant(3, 4.0)), kUnitGaussian).array() - 4.0).abs().maxCoeff() <= 1e-14);
  CHECK_THROWS(target_only(x, Eigen::VectorXd(0), kUnitGaussian));
}

TEST_CASE("local and global consistency") {
  oracle::Gen gen(2);
  SUBCASE("matches the truncated Neumann series") {
    for (int trial = 0; trial < 20; ++trial) {
      const Index n = gen.integer(2, 30), nl = gen.integer(1, static_cast<int>(n));
      const Eigen::MatrixXd x = gen.matrix(n, 2);
      const Eigen::VectorXd y = gen.vector(nl);
      Eigen::VectorXd y0 = Eigen::VectorXd::Zero(n);
      y0.head(nl) = y;
      const Eigen::VectorXd f = semisupervised_lgc(x, y, kUnitGaussian, 0.5);
      CHECK((f - oracle::lgc_series(gaussian_graph(x, 1.0), y0, 0.5, 60)).cwiseAbs().maxCoeff() <= 1e-6);
    }
  }
  SUBCASE("one labelled node spreads its sign") {
    const Eigen::MatrixXd x = gen.matrix(15, 2);
    const Eigen::VectorXd f = semisupervised_lgc(x, Eigen::VectorXd(Eigen::VectorXd::Constant(1, -2.0)), kUnitGaussian, 0.9);
    CHECK(f.maxCoeff() < 0.0);
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(15);
    y0[0] = -2.0;
    CHECK((f - oracle::lgc_series(gaussian_graph(x, 1.0), y0, 0.9, 400)).cwiseAbs().maxCoeff() <= 1e-6);
  }
  SUBCASE("small alpha keeps the seeds") {
    const Eigen::MatrixXd x = gen.matrix(10, 1);
    const Eigen::VectorXd y = gen.vector(4);
    const double alpha = 1e-9;
    const Eigen::VectorXd f = semisupervised_lgc(x, y, kUnitGaussian, alpha);
    CHECK((f.head(4) - (1 - alpha) * y).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(f.tail(6).cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("isolated vertex and bad alpha") {
    const Eigen::MatrixXd x{{0.0}, {0.1}, {50.0}};
    CHECK_THROWS_AS(semisupervised_lgc(x, Eigen::VectorXd(Eigen::VectorXd::Ones(1)), Kernel<double>{KernelFamily::uniform, 1.0}, 0.5),
                    std::domain_error);
    CHECK_THROWS(semisupervised_lgc(x, Eigen::VectorXd(Eigen::VectorXd::Ones(1)), kUnitGaussian, 1.0));
    CHECK_THROWS(semisupervised_lgc(x, Eigen::VectorXd(Eigen::VectorXd::Ones(1)), kUnitGaussian, 0.0));
    CHECK_THROWS(semisupervised_lgc(x, Eigen::VectorXd(0), kUnitGaussian, 0.5));
  }
}

TEST_CASE("stacked regression") {
  oracle::Gen gen(3);
  SUBCASE("matches the normal equations") {
    for (int trial = 0; trial < 20; ++trial) {
      const Index n = gen.integer(8, 40), nl = gen.integer(4, static_cast<int>(n));
      const Eigen::VectorXd s = gen.vector(n), t = gen.vector(n), y = gen.vector(nl);
      const double ridge = trial % 2 ? 0.0 : gen.uniform(0.0, 2.0);
      const auto fit = stacked<double>(s, t, y, ridge);
      Eigen::MatrixXd design(nl, 3);
      design << Eigen::VectorXd::Ones(nl), s.head(nl), t.head(nl);
      const Eigen::VectorXd want = oracle::ridge_normal_equations(design, y, Eigen::Vector3d(0, ridge, ridge));
      CHECK((fit.coefficients - want).cwiseAbs().maxCoeff() <= 1e-8);
      Eigen::MatrixXd full(n, 3);
      full << Eigen::VectorXd::Ones(n), s, t;
      CHECK((fit.predictions - full * want).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
  SUBCASE("exact source feature is selected") {
    const Eigen::VectorXd s = gen.vector(12), t = gen.vector(12);
    const Eigen::VectorXd y = s.head(8);
    const auto fit = stacked<double>(s, t, y, 0.0);
    CHECK(std::abs(fit.coefficients[0]) <= 1e-10);
    CHECK(fit.coefficients[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(fit.coefficients[2]) <= 1e-10);
    CHECK((fit.predictions.head(8) - y).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("huge ridge leaves the label mean") {
    const Eigen::VectorXd s = gen.vector(10), t = gen.vector(10), y = gen.vector(6);
    const auto fit = stacked<double>(s, t, y, 1e14);
    CHECK((fit.predictions.array() - y.mean()).abs().maxCoeff() <= 1e-8);
  }
  SUBCASE("errors") {
    const Eigen::VectorXd s = gen.vector(10);
    CHECK_THROWS_AS(stacked<double>(s, s, s.head(5), 0.0), std::domain_error);
    CHECK_THROWS(stacked<double>(s, gen.vector(10), gen.vector(2), 0.0));
    CHECK_THROWS(stacked<double>(s, gen.vector(10), gen.vector(5), -1.0));
  }
}

TEST_CASE("offset") {
  oracle::Gen gen(4);
  const Index n = 30, nl = 10;
  const Eigen::MatrixXd x = gen.matrix(n, 2);
  const Eigen::VectorXd source = gen.vector(n, -2, 2);
  SUBCASE("constant translation is recovered") {
    const Eigen::VectorXd truth = source.array() + 3.0;
    const Eigen::VectorXd f = offset(x, Eigen::VectorXd(truth.head(nl)), source, kUnitGaussian);
    CHECK((f - truth).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("zero residuals return the source") {
    CHECK(offset(x, Eigen::VectorXd(source.head(nl)), source, kUnitGaussian) == source);
  }
  SUBCASE("smooth sinusoidal offset beats the label variance") {
    const Index m = 400;
    Eigen::MatrixXd pts(m, 1);
    Eigen::VectorXd src(m), truth(m);
    for (Index i = 0; i < m; ++i) {
      pts(i, 0) = gen.uniform(0, 6.28);
      src[i] = std::cos(3 * pts(i, 0));
      truth[i] = src[i] + std::sin(pts(i, 0));
    }
    const Eigen::VectorXd f = offset(pts, Eigen::VectorXd(truth.head(200)), src, Kernel<double>{KernelFamily::gaussian, 0.3});
    const double mse = (f - truth).tail(m - 200).squaredNorm() / static_cast<double>(m - 200);
    const Eigen::VectorXd held = truth.tail(m - 200);
    const double variance = (held.array() - held.mean()).square().mean();
    CHECK(mse < variance);
  }
  CHECK_THROWS(offset(x, Eigen::VectorXd(0), source, kUnitGaussian));
  CHECK_THROWS(offset(x, gen.vector(5), gen.vector(3), kUnitGaussian));
}
