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

#include "pstr/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace pstr {

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["dataset"] = report.dataset;
  j["kind"] = report.kind;
  j["n_repeats"] = report.n_repeats;
  j["n_labeled"] = report.n_labeled;
  j["mse_scale"] = "standardized";
  auto methods = nlohmann::json::array();
  for (const auto& m : report.methods) {
    nlohmann::json e;
    e["method"] = m.method;
    e["label"] = m.label;
    if (m.error) {
      e["error"] = *m.error;
    } else {
      e["mean_mse"] = m.mean_mse;
      e["ci95"] = m.ci95;
      e["mean_mse_raw"] = m.mean_mse_raw;
      e["mse"] = m.mse;
      e["mse_raw"] = m.mse_raw;
      e["hyperparameters"] = m.hyperparameters;
    }
    methods.push_back(std::move(e));
  }
  j["methods"] = std::move(methods);
  if (report.kind == "run")
    j["not_available"] = nlohmann::json::array(
        {{{"method", "location_scale"}, {"label", "Location-Scale"}, {"reason", "not implemented"}}});
  return j;
}

nlohmann::json timing_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  auto methods = nlohmann::json::array();
  for (const auto& m : report.methods) {
    nlohmann::json e{{"method", m.method}, {"seconds", m.seconds}};
    if (report.kind == "nystrom_sweep") e["solve_seconds"] = m.solve_seconds;
    methods.push_back(std::move(e));
  }
  j["methods"] = std::move(methods);
  return j;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Shortest rendering with at most `digits` significant digits, e.g. 0.01.
std::string compact(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

std::string render_table(const nlohmann::json& report) {
  if (!report.contains("methods") || !report["methods"].is_array())
    throw std::invalid_argument("report document has no methods array");
  std::vector<std::string> header{"Dataset"}, row{report.value("dataset", std::string("?"))};
  for (const auto& m : report["methods"]) {
    header.push_back(m.value("label", m.value("method", std::string("?"))));
    if (m.contains("error"))
      row.push_back("error");
    else
      row.push_back(fixed(m.at("mean_mse").get<double>(), 3) + " (" +
                    compact(m.at("ci95").get<double>(), 2) + ")");
  }
  if (report.contains("not_available"))
    for (const auto& m : report["not_available"]) {
      header.push_back(m.value("label", std::string("?")));
      row.push_back("n/a");
    }

  std::ostringstream os;
  os << report.value("name", std::string()) << " (" << report.value("kind", std::string("run"))
     << ", " << report.value("n_repeats", 0) << " splits, " << report.value("n_labeled", 0)
     << " labeled; mean test MSE (95% CI))\n";
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = std::max(header[c].size(), row[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) os << "  ";
      os << cells[c] << std::string(width[c] - cells[c].size(), ' ');
    }
    os << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  line(row);
  for (const auto& m : report["methods"])
    if (m.contains("error"))
      os << m.value("method", std::string()) << ": " << m["error"].get<std::string>() << '\n';
  return os.str();
}

}  // namespace pstr
