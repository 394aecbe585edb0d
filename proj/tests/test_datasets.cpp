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

#include <pstr/datasets.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

namespace fs = std::filesystem;
using namespace pstr;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& file, const std::string& text) const {
    std::ofstream(path / file) << text;
    return path / file;
  }
};

TargetDataset labelled(Index n, oracle::Gen& gen) {
  TargetDataset ds;
  ds.name = "t";
  ds.features = gen.matrix(n, 2);
  ds.labels = gen.vector(n);
  return ds;
}

}  // namespace

TEST_CASE("CSV loading") {
  TempDir dir("pstr_csv_test");
  SUBCASE("blank labels become unlabelled rows") {
    const auto ds = load_csv(dir.write("three.csv", "feature_1,label\n0.5,1.0\n1.5,2.0\n2.5,\n"));
    CHECK(ds.size() == 3);
    CHECK(ds.labeled_count() == 2);
    CHECK(ds.unlabeled_count() == 1);
    CHECK(ds.labels == Eigen::Vector2d(1.0, 2.0));
    CHECK(ds.features(2, 0) == 2.5);
    CHECK(ds.name == "three");
    CHECK_FALSE(ds.has_spatial());
  }
  SUBCASE("labelled rows are moved first") {
    const auto ds = load_csv(dir.write("mixed.csv", "feature_1,spatial_1,label\n1,10,\n2,20,5\n3,30,\n4,40,6\n"));
    CHECK(ds.labels == Eigen::Vector2d(5, 6));
    CHECK(ds.features.col(0) == Eigen::Vector4d(2, 4, 1, 3));
    CHECK(ds.spatial.col(0) == Eigen::Vector4d(20, 40, 10, 30));
  }
  SUBCASE("non-numeric feature names its line") {
    const auto p = dir.write("bad.csv", "feature_1,label\n0.5,1\nabc,2\n");
    try {
      load_csv(p);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.row() == 3);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("other malformed input") {
    CHECK_THROWS_AS(load_csv(dir.write("short.csv", "feature_1,label\n0.5\n")), ParseError);
    CHECK_THROWS_AS(load_csv(dir.write("missing.csv", "feature_1,label\n,1\n")), ParseError);
    CHECK_THROWS_AS(load_csv(dir.write("nolabel.csv", "feature_1,y\n1,2\n")), SchemaError);
    CHECK_THROWS(load_csv(dir.path / "absent.csv"));
    CsvSchema schema;
    schema.feature_columns = {"height"};
    CHECK_THROWS_AS(load_csv(dir.write("named.csv", "feature_1,label\n1,2\n"), schema), SchemaError);
  }
  SUBCASE("explicit schema") {
    CsvSchema schema;
    schema.feature_columns = {"b", "a"};
    schema.label_column = "y";
    const auto ds = load_csv(dir.write("custom.csv", "a,b,y\n1,2,3\n"), schema);
    CHECK(ds.features(0, 0) == 2);
    CHECK(ds.features(0, 1) == 1);
    CHECK(ds.labels[0] == 3);
  }
}

TEST_CASE("CSV round trip is bit-identical") {
  TempDir dir("pstr_roundtrip_test");
  oracle::Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    TargetDataset ds;
    const Index n = gen.integer(1, 30), nl = gen.integer(0, static_cast<int>(n));
    ds.features = gen.matrix(n, gen.integer(1, 4), -1e6, 1e6);
    if (trial % 2) ds.spatial = gen.matrix(n, 2, -1e-9, 1e-9);
    else ds.spatial.resize(n, 0);
    ds.labels = gen.vector(nl, -1e3, 1e3);
    if (trial == 0) ds.features(0, 0) = 0.1;  // a short finite decimal
    const auto p = dir.path / ("r" + std::to_string(trial) + ".csv");
    write_csv(ds, p);
    const auto back = load_csv(p);
    CHECK(back.features == ds.features);
    CHECK(back.spatial == ds.spatial);
    CHECK(back.labels == ds.labels);
    write_csv(back, dir.path / "again.csv");
    std::ifstream a(p), b(dir.path / "again.csv");
    CHECK(std::string(std::istreambuf_iterator<char>(a), {}) ==
          std::string(std::istreambuf_iterator<char>(b), {}));
  }
}

TEST_CASE("standardisation") {
  SUBCASE("two labels map to minus one and one") {
    TargetDataset ds;
    ds.features = Eigen::MatrixXd{{1.0}, {3.0}};
    ds.labels = Eigen::Vector2d(0, 2);
    const auto [out, t] = standardize(ds);
    CHECK(out.labels == Eigen::Vector2d(-1, 1));
    CHECK(t.label_mean == 1.0);
    CHECK(t.label_scale == 1.0);
    CHECK(out.features == Eigen::MatrixXd{{-1.0}, {1.0}});
  }
  SUBCASE("already standard data is left alone") {
    TargetDataset ds;
    ds.features = Eigen::MatrixXd{{-1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}, {1.0, 1.0}};
    ds.labels = Eigen::Vector4d(1, -1, 1, -1);
    const auto [out, t] = standardize(ds);
    CHECK((out.features - ds.features).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((out.labels - ds.labels).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("inverse recovers labels") {
    oracle::Gen gen(5);
    for (int trial = 0; trial < 20; ++trial) {
      TargetDataset ds;
      ds.features = gen.matrix(25, 3, -50, 80);
      ds.labels = gen.vector(15, 100, 1e4);
      const auto [out, t] = standardize(ds);
      const Eigen::VectorXd back = t.invert_labels(out.labels);
      CHECK(((back - ds.labels).array().abs() / ds.labels.array().abs()).maxCoeff() <= 1e-10);
      CHECK(std::abs(out.labels.mean()) <= 1e-12);
      CHECK(std::abs(out.labels.squaredNorm() / 15 - 1.0) <= 1e-12);
      CHECK((t.apply_features(ds.features) - out.features).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("constant columns are rejected") {
    TargetDataset ds;
    ds.features = Eigen::MatrixXd{{1.0}, {2.0}, {3.0}};
    ds.labels = Eigen::Vector3d(4, 4, 4);
    CHECK_THROWS_AS(standardize(ds), SchemaError);
    ds.labels = Eigen::Vector3d(1, 2, 3);
    ds.features.setConstant(7.0);
    CHECK_THROWS_AS(standardize(ds), SchemaError);
  }
}

TEST_CASE("piecewise generator") {
  SUBCASE("noiseless lookup") {
    PiecewiseSpec spec;
    spec.breakpoints = {0.5};
    spec.source_levels = {0, 1};
    spec.target_levels = {2, 3};
    spec.noise_sd = 0;
    spec.n_points = 300;
    const auto d = make_piecewise(spec);
    CHECK(spec.segment(0.25) == 0);
    CHECK(spec.segment(0.75) == 1);
    for (Index i = 0; i < 300; ++i) {
      const double x = d.source.features(i, 0);
      CHECK(d.target.features(i, 0) == x);
      CHECK(d.source.spatial(i, 0) == x);
      CHECK(d.source.labels[i] == (x < 0.5 ? 0.0 : 1.0));
      CHECK(d.target.labels[i] == (x < 0.5 ? 2.0 : 3.0));
    }
  }
  SUBCASE("seeded and reproducible") {
    PiecewiseSpec spec;
    const auto a = make_piecewise(spec), b = make_piecewise(spec);
    CHECK(a.target.features == b.target.features);
    CHECK(a.target.labels == b.target.labels);
    CHECK(a.source.labels == b.source.labels);
    spec.rng_seed = 1;
    CHECK(make_piecewise(spec).target.features != a.target.features);
  }
  SUBCASE("within-segment noise level") {
    const PiecewiseSpec spec;
    const auto d = make_piecewise(spec);
    for (const auto* ds : {&d.source, &d.target}) {
      const auto& levels = ds == &d.source ? spec.source_levels : spec.target_levels;
      double ss = 0;
      for (Index i = 0; i < ds->size(); ++i) {
        const double r = ds->labels[i] - levels[spec.segment(ds->features(i, 0))];
        ss += r * r;
      }
      const double sd = std::sqrt(ss / static_cast<double>(ds->size() - 1));
      CHECK(sd >= 0.04);
      CHECK(sd <= 0.06);
    }
  }
  SUBCASE("invalid specs") {
    PiecewiseSpec spec;
    spec.breakpoints = {0.6, 0.3};
    CHECK_THROWS(make_piecewise(spec));
    spec.breakpoints = {0.0, 0.5};
    CHECK_THROWS(make_piecewise(spec));
    spec = {};
    spec.target_levels = {1, 2};
    CHECK_THROWS(make_piecewise(spec));
    spec = {};
    spec.noise_sd = -1;
    CHECK_THROWS(make_piecewise(spec));
  }
}

TEST_CASE("splits") {
  oracle::Gen gen(8);
  const TargetDataset ds = labelled(100, gen);
  const SplitSpec spec;
  SUBCASE("counts") {
    const auto s = split(ds, spec, 0);
    CHECK(s.train.size() == 20);
    CHECK(s.validation.size() == 16);
    CHECK(s.test.size() == 64);
  }
  SUBCASE("determinism") {
    const auto a = split(ds, spec, 0), b = split(ds, spec, 0), c = split(ds, spec, 1);
    CHECK(a.train == b.train);
    CHECK(a.validation == b.validation);
    CHECK(a.train != c.train);
  }
  SUBCASE("disjoint partitions cover the labelled set") {
    TargetDataset with_unlabelled = ds;
    with_unlabelled.features = gen.matrix(130, 2);
    for (Index r = 0; r < 30; ++r) {
      SplitSpec sp;
      sp.n_labeled = gen.integer(2, 60);
      sp.validation_fraction = gen.uniform(0.05, 0.9);
      sp.rng_seed = static_cast<std::uint64_t>(r);
      const auto s = split(with_unlabelled, sp, r);
      std::set<Index> seen;
      for (const auto* part : {&s.train, &s.validation, &s.test})
        for (Index i : *part) CHECK(seen.insert(i).second);
      CHECK(seen.size() == 100);
      CHECK(*seen.rbegin() == 99);
      CHECK(s.unlabeled_pool.size() == s.train.size() + s.test.size() + 30);
    }
  }
  SUBCASE("impossible requests") {
    SplitSpec big;
    big.n_labeled = 200;
    CHECK_THROWS(split(ds, big, 0));
    SplitSpec one;
    one.n_labeled = 1;
    CHECK_THROWS(split(ds, one, 0));
  }
}

TEST_CASE("subsets reorder rows and hide labels") {
  oracle::Gen gen(9);
  const TargetDataset ds = labelled(10, gen);
  const auto sub = ds.subset({4, 1}, {7, 2});
  CHECK(sub.labeled_count() == 2);
  CHECK(sub.size() == 4);
  CHECK(sub.labels == Eigen::Vector2d(ds.labels[4], ds.labels[1]));
  CHECK(sub.features.row(2) == ds.features.row(7));
  CHECK_THROWS(ds.subset({10}, {}));
}
