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

#include "pstr/guidance_io.hpp"

#include "pstr/datasets.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace pstr {

GuidanceSet load_guidance_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  GuidanceSet guide;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "i,j,relation") throw ParseError(1, "expected header 'i,j,relation'");
      continue;
    }
    std::istringstream fields(line);
    std::string a, b, relation;
    if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') ||
        !std::getline(fields, relation))
      throw ParseError(line_no, "expected three fields");
    Index i = 0, j = 0;
    try {
      std::size_t used_a = 0, used_b = 0;
      i = std::stoll(a, &used_a);
      j = std::stoll(b, &used_b);
      if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ParseError(line_no, "node indices must be integers");
    }
    if (relation == "similar") guide.similar.emplace_back(i, j);
    else if (relation == "dissimilar") guide.dissimilar.emplace_back(i, j);
    else throw ParseError(line_no, "unknown relation '" + relation + "'");
  }
  return guide;
}

void write_guidance_csv(const GuidanceSet& guide, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "i,j,relation\n";
  for (const auto& [i, j] : guide.similar) out << i << ',' << j << ",similar\n";
  for (const auto& [i, j] : guide.dissimilar) out << i << ',' << j << ",dissimilar\n";
}

}  // namespace pstr
