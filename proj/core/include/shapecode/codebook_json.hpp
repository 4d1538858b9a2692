// Copyright 2026 The shapecode Authors
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

#include <filesystem>

#include <nlohmann/json.hpp>

#include "shapecode/code.hpp"

namespace shapecode {

inline constexpr int kCodebookSchemaVersion = 1;

/// {"version":1, "alphabet_m":M, "kind":"V2V",
///  "entries":[{"b":"0","x":[1,1,1]}, ...]}
/// Entry order is preserved exactly. A "provenance" object is written when
/// given and ignored on read.
nlohmann::json codebook_to_json(const PrefixFreeCode& code, const nlohmann::json& provenance = nullptr);

/// Parses and validates; throws std::invalid_argument on schema errors and
/// InvalidCode when the entries do not form a valid prefix-free code.
PrefixFreeCode codebook_from_json(const nlohmann::json& doc);

void write_codebook(const std::filesystem::path& path, const PrefixFreeCode& code,
                    const nlohmann::json& provenance = nullptr);
PrefixFreeCode read_codebook(const std::filesystem::path& path);

}  // namespace shapecode
