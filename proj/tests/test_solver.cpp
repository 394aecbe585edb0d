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

#include <pstr/smoother.hpp>
#include <pstr/solver.hpp>

#include <doctest.h>

using namespace pstr;

namespace {

const Kernel<double> kUnitGaussian{KernelFamily::gaussian, 1.0};

Laplacian<double> random_laplacian(oracle::Gen& gen, Index n) {
  return laplacian(SimilarityGraph<double>{gen.graph(n)});
}

}  // namespace

TEST_CASE("Nadaraya-Watson smoother") {
  SUBCASE("single labelled point") {
    const Eigen::MatrixXd x{{0.3}};
    CHECK(nw_predict(x, Eigen::VectorXd::Constant(1, 4.2), x, kUnitGaussian)[0] == 4.2);
  }
  SUBCASE("two labelled points, hand-evaluated") {
    const Eigen::MatrixXd xl{{0.0}, {2.0}};
    const Eigen::MatrixXd xp{{0.0}};
    const double f = nw_predict(xl, Eigen::Vector2d(0, 2), xp, kUnitGaussian)[0];
    CHECK(f == doctest::Approx(0.238406).epsilon(1e-6));
    CHECK(f == doctest::Approx(2 * std::exp(-2.0) / (1 + std::exp(-2.0))).epsilon(1e-15));
  }
  SUBCASE("constant labels") {
    oracle::Gen gen(2);
    const Eigen::MatrixXd xl = gen.matrix(7, 2), xp = gen.matrix(13, 2);
    const auto f = nw_predict(xl, Eigen::VectorXd::Constant(7, -1.5), xp, kUnitGaussian);
    CHECK((f.array() + 1.5).abs().maxCoeff() <= 1e-15);
  }
  SUBCASE("rows are convex weights and match the double-loop oracle") {
    oracle::Gen gen(9);
    for (int trial = 0; trial < 20; ++trial) {
      const Index d = gen.integer(1, 3);
      const Eigen::MatrixXd xl = gen.matrix(gen.integer(1, 15), d), xp = gen.matrix(20, d);
      const Eigen::VectorXd y = gen.vector(xl.rows(), -3, 3);
      const double h = gen.uniform(0.3, 2);
      const auto s = nw_smoother(xl, y, xp, Kernel<double>{KernelFamily::gaussian, h});
      CHECK((s.weights.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-10);
      CHECK(s.weights.minCoeff() >= 0.0);
      CHECK((s.fitted() - oracle::nadaraya_watson(xl, y, xp, h)).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(s.fitted().maxCoeff() <= y.maxCoeff() + 1e-12);
      CHECK(s.fitted().minCoeff() >= y.minCoeff() - 1e-12);
    }
  }
  SUBCASE("a point with no neighbour is an error") {
    const Eigen::MatrixXd xl{{0.0}}, xp{{5.0}};
    CHECK_THROWS_AS(nw_predict(xl, Eigen::VectorXd::Ones(1), xp, Kernel<double>{KernelFamily::uniform, 1.0}),
                    std::domain_error);
    CHECK_THROWS_AS(nw_predict(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), xp, kUnitGaussian),
                    std::invalid_argument);
  }
}

TEST_CASE("regularised solve on small systems") {
  const auto lap = laplacian(SimilarityGraph<double>{Eigen::MatrixXd{{0, 1}, {1, 0}}});
  const Eigen::VectorXd g = Eigen::Vector2d(0, 2);
  const Eigen::VectorXd f = solve_psrt(g, lap, 0.5);
  CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f[1] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(solve_psrt(g, lap, 0.0) == g);
  CHECK_THROWS(solve_psrt(g, lap, -1.0));
  CHECK_THROWS(solve_psrt(Eigen::VectorXd(Eigen::Vector3d(1, 2, 3)), lap, 1.0));
}

TEST_CASE("large lambda projects onto constants") {
  oracle::Gen gen(12);
  Eigen::MatrixXd w = gen.graph(20, 0.0);
  const auto lap = laplacian(SimilarityGraph<double>{w});
  const Eigen::VectorXd g = gen.vector(20, -2, 2);
  const Eigen::VectorXd f = solve_psrt(g, lap, 1e6);
  CHECK((f.array() - g.mean()).abs().maxCoeff() <= 1e-3);
}

TEST_CASE("solves agree with a dense direct solve and satisfy stationarity") {
  oracle::Gen gen(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = gen.integer(1, 60);
    const Eigen::MatrixXd w = gen.graph(n);
    const auto lap = laplacian(SimilarityGraph<double>{w});
    const Eigen::VectorXd g = gen.vector(n, -3, 3);
    const double lambda = std::pow(10.0, gen.uniform(-3, 4));
    const Eigen::VectorXd f = solve_psrt(g, lap, lambda);
    CHECK(stationarity_residual(lap, lambda, f, g) <= 1e-8 * (1 + g.norm()));
    CHECK(oracle::relative_error(f, oracle::regularized_solve(w, lambda, g)) <= 1e-9);
  }
}

TEST_CASE("solution minimises the two-term objective") {
  oracle::Gen gen(41);
  const auto lap = random_laplacian(gen, 30);
  const Eigen::VectorXd g = gen.vector(30);
  for (double lambda : {0.01, 1.0, 100.0}) {
    const Eigen::VectorXd f = solve_psrt(g, lap, lambda);
    const double best = psrt_objective(lap, lambda, f, g);
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd delta(30);
      for (Index i = 0; i < 30; ++i) delta[i] = gen.normal();
      delta *= 1e-3 / delta.norm();
      CHECK(psrt_objective(lap, lambda, Eigen::VectorXd(f + delta), g) >= best);
    }
  }
}

TEST_CASE("smoothness energy shrinks as lambda grows") {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto lap = random_laplacian(gen, 25);
    const Eigen::VectorXd g = gen.vector(25, -2, 2);
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {0.0, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0}) {
      const Eigen::VectorXd f = solve_psrt(g, lap, lambda);
      const double energy = f.dot(lap.matrix * f);
      CHECK(energy <= previous * (1 + 1e-12) + 1e-14);
      previous = energy;
    }
  }
}

TEST_CASE("solve from a smoother records lambda and residual") {
  oracle::Gen gen(5);
  const Eigen::MatrixXd x = gen.matrix(12, 1);
  const auto smoother = nw_smoother(Eigen::MatrixXd(x.topRows(4)), gen.vector(4), x, kUnitGaussian);
  const auto lap = random_laplacian(gen, 12);
  const auto sol = solve_psrt(smoother, lap, 2.0);
  CHECK(sol.lambda == 2.0);
  CHECK(sol.stationarity_residual <= 1e-8 * (1 + smoother.fitted().norm()));
  CHECK(solve_psrt(smoother, lap, 0.0).predictions == smoother.fitted());
  CHECK_THROWS(solve_psrt(smoother, random_laplacian(gen, 5), 1.0));
}

TEST_CASE("out-of-sample extension") {
  oracle::Gen gen(7);
  const Eigen::MatrixXd x = gen.matrix(10, 2, 0, 10);
  const Eigen::VectorXd f = gen.vector(10);
  const Kernel<double> narrow{KernelFamily::gaussian, 0.05};
  const auto ext = extend_out_of_sample(x, f, Eigen::MatrixXd(x.row(3)), narrow);
  CHECK(std::abs(ext[0] - f[3]) <= 1e-6);
  const auto flat = extend_out_of_sample(x, Eigen::VectorXd::Constant(10, 2.5), gen.matrix(5, 2, 0, 10),
                                         kUnitGaussian);
  CHECK((flat.array() - 2.5).abs().maxCoeff() <= 1e-14);
  CHECK(extend_out_of_sample(x, f, Eigen::MatrixXd(0, 2), kUnitGaussian).size() == 0);
}

TEST_CASE("bound diagnostics") {
  oracle::Gen gen(13);
  const Index n = 40;
  const Eigen::MatrixXd x = gen.matrix(n, 1);
  const Eigen::VectorXd truth = gen.vector(n);
  const Eigen::VectorXd labels = truth.head(10);
  const Kernel<double> k1{KernelFamily::gaussian, 0.5}, knw{KernelFamily::gaussian, 0.3};

  SUBCASE("source equal to the oracle target") {
    const auto d = bound_diagnostics<double>(x, labels, truth, truth, k1, knw, 1.0);
    CHECK(d.laplacian_distance == 0.0);
    CHECK(d.with_source == d.with_target);
    CHECK(d.source_error == d.target_error);
  }
  SUBCASE("lambda zero reduces every estimate to Nadaraya-Watson") {
    const auto d = bound_diagnostics<double>(x, labels, gen.vector(n), truth, k1, knw, 0.0);
    CHECK(d.with_source == d.nadaraya_watson);
    CHECK(d.with_target == d.nadaraya_watson);
    CHECK(d.source_error == d.nw_error);
    CHECK(d.target_error == d.nw_error);
  }
  SUBCASE("spectral distance matches power iteration") {
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::VectorXd source = gen.vector(n);
      const auto d = bound_diagnostics<double>(x, labels, source, truth, k1, knw, 1.0);
      const Eigen::MatrixXd diff = laplacian(build_similarity_graph(source, k1)).matrix -
                                   laplacian(build_similarity_graph(truth, k1)).matrix;
      CHECK(d.laplacian_distance == doctest::Approx(oracle::power_iteration_norm(diff)).epsilon(1e-6));
    }
  }
}
