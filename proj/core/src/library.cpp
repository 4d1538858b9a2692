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

#include "shapecode/library.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "shapecode/codebook_json.hpp"

namespace shapecode {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view s) {
  Int v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

RateGrid RateGrid::range(double first, double step, double last) {
  if (!(step > 0.0)) throw std::invalid_argument("rate grid step must be positive");
  if (!(first > 0.0) || last < first) throw std::invalid_argument("rate grid needs 0 < first <= last");
  RateGrid grid;
  grid.step = step;
  for (long i = 0;; ++i) {
    // Rounded to 1e-12 so that 0.001 * 1000 prints and compares as 1.
    const double t = std::round((first + static_cast<double>(i) * step) * 1e12) / 1e12;
    if (t > last + 1e-9) break;
    grid.targets.push_back(t);
  }
  return grid;
}

RateGrid RateGrid::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return RateGrid{{parse_double(parts[0])}, 0.0};
  if (parts.size() == 3) return range(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
  throw std::invalid_argument("rate grid must be 'value' or 'first:step:last', got '" + std::string(text) + "'");
}

void write_library(const std::filesystem::path& dir, const CodeLibrary& library, const nlohmann::json& provenance) {
  std::filesystem::create_directories(dir / "codes");
  std::ofstream index(dir / "index.csv");
  if (!index) throw std::runtime_error("cannot write " + (dir / "index.csv").string());
  if (!provenance.is_null()) index << "# " << provenance.dump() << '\n';
  index << kIndexHeader << '\n';

  for (std::size_t i = 0; i < library.size(); ++i) {
    const auto& entry = library[i];
    index << format_double(entry.target) << ',';
    if (!entry.code) {
      index << "0,,,,,,,,\n";
      continue;
    }
    const auto& built = *entry.code;
    char name[64];
    std::snprintf(name, sizeof(name), "codes/%s_m%d_%04zu.json", std::string(to_string(built.code.kind())).c_str(),
                  built.code.alphabet().size(), i);
    nlohmann::json prov = provenance.is_null() ? nlohmann::json::object() : provenance;
    prov["target_rate"] = entry.target;
    write_codebook(dir / name, built.code, prov);
    index << "1," << format_double(built.metrics.rate) << ',' << format_double(built.metrics.energy) << ','
          << format_double(built.gap_db) << ',' << to_string(built.code.kind()) << ','
          << built.code.alphabet().size() << ',' << built.size_param << ',' << built.code.size() << ',' << name
          << '\n';
  }
}

std::vector<IndexRow> read_library_index(const std::filesystem::path& dir) {
  std::ifstream in(dir / "index.csv");
  if (!in) throw std::runtime_error("missing library index " + (dir / "index.csv").string());
  std::vector<IndexRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kIndexHeader) throw std::invalid_argument("unexpected index header: " + line);
      header_seen = true;
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() != 10) throw std::invalid_argument("index row has " + std::to_string(cols.size()) + " columns");
    IndexRow row;
    row.target_rate = parse_double(cols[0]);
    row.achieved = cols[1] == "1";
    if (row.achieved) {
      row.realized_rate = parse_double(cols[2]);
      row.energy = parse_double(cols[3]);
      row.gap_db = parse_double(cols[4]);
      row.kind = std::string(cols[5]);
      row.m = parse_int<int>(cols[6]);
      row.size_param = parse_int<int>(cols[7]);
      row.cardinality = parse_int<std::size_t>(cols[8]);
      row.file = std::string(cols[9]);
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("library index has no header");
  return rows;
}

std::vector<CuratedRow> select_curated(std::span<const LibraryRows> libraries, std::span<const double> targets,
                                       double window) {
  std::vector<CuratedRow> out;
  for (double t : targets) {
    CuratedRow row{t, std::nullopt, {}};
    for (const auto& lib : libraries) {
      for (const auto& r : lib.rows) {
        if (!r.achieved || std::abs(r.realized_rate - t) > window) continue;
        const bool better = !row.best || r.gap_db < row.best->gap_db ||
                            (r.gap_db == row.best->gap_db && r.cardinality < row.best->cardinality);
        if (better) {
          row.best = r;
          row.library = lib.dir;
        }
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace shapecode
