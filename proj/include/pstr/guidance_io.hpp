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

#include "pstr/graph.hpp"

#include <filesystem>

namespace pstr {

/// CSV with header `i,j,relation`, relation in {similar, dissimilar}.
GuidanceSet load_guidance_csv(const std::filesystem::path& path);
void write_guidance_csv(const GuidanceSet& guide, const std::filesystem::path& path);

}  // namespace pstr
