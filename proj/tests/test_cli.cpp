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

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string output;
};

/// Runs the command-line tool with stderr folded into the captured output.
Result pstr(const std::string& args) {
  const std::string cmd = std::string(PSTR_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Workspace {
  fs::path dir = fs::temp_directory_path() / "pstr_cli_test";
  Workspace() {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

}  // namespace

TEST_CASE("usage errors exit with status 2") {
  CHECK(pstr("").code == 2);
  CHECK(pstr("frobnicate").code == 2);
  CHECK(pstr("run --config x.json --bogus").code == 2);
  CHECK(pstr("run").code == 2);
  CHECK(pstr("--help").code == 0);
}

TEST_CASE("generate writes source and target CSV files") {
  Workspace ws;
  const auto spec = ws.write("piecewise.json", R"({"n_points": 50, "noise_sd": 0.1})");
  const auto r = pstr("generate --spec " + spec.string() + " --out " + (ws.dir / "data").string());
  CHECK(r.code == 0);
  CHECK(fs::exists(ws.dir / "data" / "source.csv"));
  CHECK(fs::exists(ws.dir / "data" / "target.csv"));
  std::ifstream in(ws.dir / "data" / "target.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "feature_0,spatial_0,label");

  const auto bad = ws.write("bad.json", R"({"breakpoints": [0.7, 0.2]})");
  CHECK(pstr("generate --spec " + bad.string() + " --out " + ws.dir.string()).code == 1);
}

TEST_CASE("run writes byte-identical reports and a text table") {
  Workspace ws;
  const auto cfg = ws.write("exp.json", R"({
    "name": "cli", "dataset": {"type": "piecewise", "spec": {"n_points": 100}},
    "methods": ["pstr", "target_only"], "split": {"n_repeats": 2}, "output_dir": "out"})");
  REQUIRE(pstr("run --config " + cfg.string()).code == 0);
  const auto first = slurp(ws.dir / "out" / "report.json");
  CHECK(fs::exists(ws.dir / "out" / "report.txt"));
  CHECK(fs::exists(ws.dir / "out" / "timing.json"));
  REQUIRE(pstr("run --config " + cfg.string()).code == 0);
  CHECK(first == slurp(ws.dir / "out" / "report.json"));
  const auto doc = nlohmann::json::parse(first);
  CHECK(doc["methods"].size() == 2);

  const auto table = pstr("report --in " + (ws.dir / "out" / "report.json").string());
  CHECK(table.code == 0);
  CHECK(table.output == slurp(ws.dir / "out" / "report.txt"));
  CHECK(pstr("report --in " + (ws.dir / "out" / "report.json").string() + " --out " +
             (ws.dir / "table.txt").string()).code == 0);
  CHECK(slurp(ws.dir / "table.txt") == table.output);
}

TEST_CASE("CSV datasets, sweeps and gradient maps") {
  Workspace ws;
  const auto spec = ws.write("piecewise.json", R"({"n_points": 80})");
  REQUIRE(pstr("generate --spec " + spec.string() + " --out " + ws.dir.string()).code == 0);
  const auto cfg = ws.write("exp.json", R"({
    "dataset": {"type": "csv", "target": "target.csv", "source": "source.csv"},
    "methods": ["pstr"], "split": {"n_repeats": 2, "n_labeled": 10},
    "guidance": {"fractions": [0.2]}, "nystrom": {"fractions": [0.5]},
    "gradient": {"resolution": [7]}, "output_dir": "res"})");
  CHECK(pstr("sweep-guidance --config " + cfg.string()).code == 0);
  const auto g = nlohmann::json::parse(slurp(ws.dir / "res" / "guidance" / "report.json"));
  CHECK(g["methods"].size() == 2);
  CHECK(pstr("sweep-nystrom --config " + cfg.string()).code == 0);
  const auto n = nlohmann::json::parse(slurp(ws.dir / "res" / "nystrom" / "report.json"));
  CHECK(n["methods"].size() == 2);
  CHECK(nlohmann::json::parse(slurp(ws.dir / "res" / "nystrom" / "timing.json"))["methods"][1].contains("solve_seconds"));

  CHECK(pstr("gradient-map --config " + cfg.string()).code == 0);
  std::ifstream grid(ws.dir / "res" / "gradient_map.csv");
  std::string header;
  std::getline(grid, header);
  CHECK(header == "x1,gradient_norm");
  int rows = 0;
  for (std::string line; std::getline(grid, line);) ++rows;
  CHECK(rows == 7);
  CHECK(fs::exists(ws.dir / "res" / "model.json"));
}

TEST_CASE("missing inputs are named in the diagnostic") {
  Workspace ws;
  const auto cfg = ws.write("exp.json", R"({
    "dataset": {"type": "csv", "target": "nowhere/target.csv", "source": "nowhere/source.csv"}})");
  const auto r = pstr("run --config " + cfg.string());
  CHECK(r.code != 0);
  CHECK(r.output.find("nowhere/target.csv") != std::string::npos);

  const auto missing = pstr("run --config " + (ws.dir / "absent.json").string());
  CHECK(missing.code != 0);
  CHECK(missing.output.find("absent.json") != std::string::npos);
  CHECK(pstr("report --in " + (ws.dir / "absent.json").string()).code != 0);
}
