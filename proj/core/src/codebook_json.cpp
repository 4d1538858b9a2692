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

#include "shapecode/codebook_json.hpp"

#include <fstream>
#include <stdexcept>

namespace shapecode {

nlohmann::json codebook_to_json(const PrefixFreeCode& code, const nlohmann::json& provenance) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : code.entries()) {
    nlohmann::json x = nlohmann::json::array();
    for (Amplitude a : e.codeword.symbols()) x.push_back(static_cast<int>(a));
    entries.push_back({{"b", e.info.str()}, {"x", std::move(x)}});
  }
  nlohmann::json doc = {
      {"version", kCodebookSchemaVersion},
      {"alphabet_m", code.alphabet().size()},
      {"kind", std::string(to_string(code.kind()))},
      {"entries", std::move(entries)},
  };
  if (!provenance.is_null()) doc["provenance"] = provenance;
  return doc;
}

PrefixFreeCode codebook_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("codebook document is not a JSON object");
  if (!doc.contains("version") || doc.at("version") != kCodebookSchemaVersion) {
    throw std::invalid_argument("unsupported codebook version (expected " +
                                std::to_string(kCodebookSchemaVersion) + ")");
  }
  try {
    const AskAlphabet alphabet(doc.at("alphabet_m").get<int>());
    const CodeKind kind = parse_code_kind(doc.at("kind").get<std::string>());
    std::vector<CodeEntry> entries;
    for (const auto& item : doc.at("entries")) {
      std::vector<Amplitude> symbols;
      for (const auto& a : item.at("x")) {
        const int v = a.get<int>();
        if (v < 0 || v > 255) throw std::invalid_argument("amplitude out of range: " + std::to_string(v));
        symbols.push_back(static_cast<Amplitude>(v));
      }
      entries.push_back({BitWord(item.at("b").get<std::string>()), SymbolWord(std::move(symbols))});
    }
    return PrefixFreeCode::checked(alphabet, kind, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed codebook: ") + e.what());
  }
}

void write_codebook(const std::filesystem::path& path, const PrefixFreeCode& code, const nlohmann::json& provenance) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << codebook_to_json(code, provenance).dump(1) << '\n';
}

PrefixFreeCode read_codebook(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return codebook_from_json(doc);
}

}  // namespace shapecode
