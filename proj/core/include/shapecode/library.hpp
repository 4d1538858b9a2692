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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "shapecode/code.hpp"

namespace shapecode {

/// A constructed code together with its realized (not targeted) metrics.
struct BuiltCode {
  PrefixFreeCode code;
  CodeMetrics metrics;
  double gap_db = 0.0;
  int size_param = 0;  // v for V2F, u for F2V, right-tree leaf count for V2V
  int sum_depth = 0;   // right-tree sum depth for F2V/V2V, 0 for V2F
};

struct RateGrid {
  std::vector<double> targets;
  double step = 0.0;

  /// first, first + step, ... up to last (inclusive within 1e-9).
  static RateGrid range(double first, double step, double last);
  /// "first:step:last" or a single value; a single value gets step 0.
  static RateGrid parse(std::string_view text);
};

struct LibraryEntry {
  double target = 0.0;
  std::optional<BuiltCode> code;  // nullopt: no qualifying code for this target
};

using CodeLibrary = std::vector<LibraryEntry>;

/// One row of a library's index.csv.
struct IndexRow {
  double target_rate = 0.0;
  bool achieved = false;
  double realized_rate = 0.0;
  double energy = 0.0;
  double gap_db = 0.0;
  std::string kind;
  int m = 0;
  int size_param = 0;
  std::size_t cardinality = 0;
  std::string file;  // relative to the library directory
};

inline constexpr std::string_view kIndexHeader =
    "target_rate,achieved,realized_rate,E_C,gap_db,kind,m,size,cardinality,file";

/// Writes <dir>/index.csv and one codebook JSON per achieved entry under
/// <dir>/codes/. Floating-point columns use 17 significant digits so that
/// re-reading reproduces them exactly. Comment lines start with '#'.
void write_library(const std::filesystem::path& dir, const CodeLibrary& library, const nlohmann::json& provenance);

std::vector<IndexRow> read_library_index(const std::filesystem::path& dir);

struct CuratedRow {
  double target = 0.0;
  std::optional<IndexRow> best;
  std::filesystem::path library;  // directory the best row came from
};

struct LibraryRows {
  std::filesystem::path dir;
  std::vector<IndexRow> rows;
};

/// For every target, the achieved row with the smallest gap among rows whose
/// realized rate is within +-window of it (ties: smaller cardinality).
std::vector<CuratedRow> select_curated(std::span<const LibraryRows> libraries, std::span<const double> targets,
                                       double window);

}  // namespace shapecode
