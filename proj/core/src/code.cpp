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

#include "shapecode/code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace shapecode {

AskAlphabet::AskAlphabet(int m) : m_(m) {
  if (m < 2 || m > kMaxSize) {
    throw std::invalid_argument("ASK alphabet size must be in [2, 128], got " + std::to_string(m));
  }
}

int AskAlphabet::bits_per_symbol() const {
  if (!std::has_single_bit(static_cast<unsigned>(m_))) {
    throw std::invalid_argument("alphabet size " + std::to_string(m_) + " is not a power of two");
  }
  return std::countr_zero(static_cast<unsigned>(m_));
}

double AskAlphabet::uniform_energy() const {
  return (4.0 * m_ * m_ - 1.0) / 3.0;
}

BitWord::BitWord(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit word contains non-binary character '" + std::string(1, c) + "'");
    }
  }
}

bool BitWord::is_prefix_of(const BitWord& other) const {
  return bits_.size() <= other.bits_.size() && other.bits_.compare(0, bits_.size(), bits_) == 0;
}

std::int64_t SymbolWord::energy() const {
  std::int64_t e = 0;
  for (Amplitude a : symbols_) e += static_cast<std::int64_t>(a) * a;
  return e;
}

bool SymbolWord::is_prefix_of(const SymbolWord& other) const {
  return symbols_.size() <= other.symbols_.size() &&
         std::equal(symbols_.begin(), symbols_.end(), other.symbols_.begin());
}

std::string SymbolWord::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(symbols_[i]);
  }
  return out;
}

std::string_view to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::V2F: return "V2F";
    case CodeKind::F2V: return "F2V";
    case CodeKind::V2V: return "V2V";
    case CodeKind::Uniform: return "UNIFORM";
  }
  return "?";
}

CodeKind parse_code_kind(std::string_view text) {
  if (text == "V2F") return CodeKind::V2F;
  if (text == "F2V") return CodeKind::F2V;
  if (text == "V2V") return CodeKind::V2V;
  if (text == "UNIFORM") return CodeKind::Uniform;
  throw std::invalid_argument("unknown code kind '" + std::string(text) + "'");
}

PrefixFreeCode::PrefixFreeCode(AskAlphabet alphabet, CodeKind kind, std::vector<CodeEntry> entries)
    : alphabet_(alphabet), kind_(kind), entries_(std::move(entries)) {}

PrefixFreeCode PrefixFreeCode::checked(AskAlphabet alphabet, CodeKind kind, std::vector<CodeEntry> entries) {
  PrefixFreeCode code(alphabet, kind, std::move(entries));
  auto report = validate_code(code);
  if (!report.ok()) throw InvalidCode(std::move(report));
  return code;
}

std::vector<int> PrefixFreeCode::info_lengths() const {
  std::vector<int> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.info.length());
  return out;
}

std::vector<int> PrefixFreeCode::codeword_lengths() const {
  std::vector<int> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.codeword.length());
  return out;
}

std::vector<std::int64_t> PrefixFreeCode::codeword_energies() const {
  std::vector<std::int64_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.codeword.energy());
  return out;
}

int PrefixFreeCode::max_codeword_length() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, e.codeword.length());
  return m;
}

int PrefixFreeCode::min_info_length() const {
  if (entries_.empty()) return 0;
  int m = entries_.front().info.length();
  for (const auto& e : entries_) m = std::min(m, e.info.length());
  return m;
}

int PrefixFreeCode::max_info_length() const {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, e.info.length());
  return m;
}

namespace {

std::string describe_report(const ValidationReport& r) {
  std::string msg = "invalid prefix-free code:";
  for (const auto& p : r.problems) msg += " " + p + ";";
  return msg;
}

// Sorted adjacency suffices: if a is a prefix of c and a < b < c, a is a prefix of b.
template <typename Word, typename Describe>
void check_prefix_side(std::vector<const Word*> words, bool& prefix_free, bool& unique,
                       std::vector<std::string>& problems, const char* side, Describe describe) {
  std::sort(words.begin(), words.end(), [](const Word* a, const Word* b) { return *a < *b; });
  for (std::size_t i = 1; i < words.size(); ++i) {
    const Word& a = *words[i - 1];
    const Word& b = *words[i];
    if (a == b) {
      unique = false;
      problems.push_back(std::string("duplicate ") + side + " word \"" + describe(a) + "\"");
    } else if (a.is_prefix_of(b)) {
      prefix_free = false;
      problems.push_back(std::string(side) + " word \"" + describe(a) + "\" is a prefix of \"" + describe(b) + "\"");
    }
  }
}

}  // namespace

InvalidCode::InvalidCode(ValidationReport report)
    : std::invalid_argument(describe_report(report)), report_(std::move(report)) {}

bool kraft_equals_one(std::span<const int> lengths) {
  if (lengths.empty()) return false;
  const int max_len = *std::max_element(lengths.begin(), lengths.end());
  if (*std::min_element(lengths.begin(), lengths.end()) < 0) return false;
  std::vector<std::uint64_t> count(static_cast<std::size_t>(max_len) + 1, 0);
  for (int l : lengths) ++count[static_cast<std::size_t>(l)];
  // Binary carry from the deepest level upward; the sum is exactly one iff
  // no level leaves a remainder and a single unit reaches depth 0.
  std::uint64_t carry = 0;
  for (int l = max_len; l >= 1; --l) {
    const std::uint64_t total = count[static_cast<std::size_t>(l)] + carry;
    if (total % 2 != 0) return false;
    carry = total / 2;
  }
  return count[0] + carry == 1;
}

ValidationReport validate_code(const PrefixFreeCode& code) {
  ValidationReport r;
  const auto entries = code.entries();
  if (entries.size() < 2) {
    r.enough_entries = false;
    r.problems.push_back("code has " + std::to_string(entries.size()) + " entries, need at least 2");
  }

  std::vector<const BitWord*> infos;
  std::vector<const SymbolWord*> words;
  std::vector<int> lengths;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.info.empty() || e.codeword.empty()) {
      r.no_empty_words = false;
      r.problems.push_back("entry " + std::to_string(i) + " has an empty word");
    }
    for (Amplitude a : e.codeword.symbols()) {
      if (!code.alphabet().contains(a)) {
        r.symbols_in_alphabet = false;
        r.problems.push_back("entry " + std::to_string(i) + " uses amplitude " + std::to_string(a) +
                             " outside the " + std::to_string(code.alphabet().size()) + "-ASK alphabet");
        break;
      }
    }
    infos.push_back(&e.info);
    words.push_back(&e.codeword);
    lengths.push_back(e.info.length());
    r.kraft_sum += std::ldexp(1.0, -e.info.length());
  }

  check_prefix_side(infos, r.dictionary_prefix_free, r.no_duplicates, r.problems, "dictionary",
                    [](const BitWord& b) { return b.str(); });
  check_prefix_side(words, r.codebook_prefix_free, r.no_duplicates, r.problems, "codebook",
                    [](const SymbolWord& x) { return x.to_string(); });

  if (!entries.empty() && !kraft_equals_one(lengths)) {
    r.kraft_complete = false;
    r.problems.push_back("dictionary Kraft sum is " + std::to_string(r.kraft_sum) + ", not exactly 1");
  }
  return r;
}

CodeMetrics code_metrics(const PrefixFreeCode& code) {
  auto report = validate_code(code);
  if (!report.ok()) throw InvalidCode(std::move(report));
  const auto energies = code.codeword_energies();
  return metrics_from_lengths(code.info_lengths(), code.codeword_lengths(), energies);
}

CodeMetrics metrics_from_lengths(std::span<const int> info_lengths, std::span<const int> codeword_lengths,
                                 std::span<const std::int64_t> codeword_energies) {
  const std::size_t n = info_lengths.size();
  if (codeword_lengths.size() != n || codeword_energies.size() != n || n == 0) {
    throw std::invalid_argument("metrics_from_lengths: inconsistent sizes");
  }
  CodeMetrics m;
  m.leaf_pmf.reserve(n);
  for (int l : info_lengths) m.leaf_pmf.push_back(std::ldexp(1.0, -l));

  const int max_len = *std::max_element(info_lengths.begin(), info_lengths.end());
  if (max_len <= 62) {
    // Scale every probability by 2^max_len so all sums are integers.
    __extension__ typedef unsigned __int128 u128;
    u128 sum_info = 0, sum_len = 0, sum_energy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const u128 w = u128{1} << (max_len - info_lengths[i]);
      sum_info += w * static_cast<u128>(info_lengths[i]);
      sum_len += w * static_cast<u128>(codeword_lengths[i]);
      sum_energy += w * static_cast<u128>(codeword_energies[i]);
    }
    const long double scale = std::ldexp(1.0L, -max_len);
    m.expected_info_length = static_cast<double>(static_cast<long double>(sum_info) * scale);
    m.expected_codeword_length = static_cast<double>(static_cast<long double>(sum_len) * scale);
    m.rate = static_cast<double>(static_cast<long double>(sum_info) / static_cast<long double>(sum_len));
    m.energy = static_cast<double>(static_cast<long double>(sum_energy) / static_cast<long double>(sum_len));
  } else {
    long double sum_info = 0, sum_len = 0, sum_energy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long double p = m.leaf_pmf[i];
      sum_info += p * info_lengths[i];
      sum_len += p * codeword_lengths[i];
      sum_energy += p * static_cast<long double>(codeword_energies[i]);
    }
    m.expected_info_length = static_cast<double>(sum_info);
    m.expected_codeword_length = static_cast<double>(sum_len);
    m.rate = static_cast<double>(sum_info / sum_len);
    m.energy = static_cast<double>(sum_energy / sum_len);
  }
  return m;
}

PrefixFreeCode canonical_table1c() {
  const char* infos[] = {"0", "100", "101", "110", "1110", "11110", "111110", "111111"};
  const std::vector<SymbolWord> words = {
      {1, 1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 1, 3}, {1, 1, 1, 1, 1, 3}, {1, 1, 1, 1, 3},
      {1, 1, 1, 3},          {1, 1, 3},             {1, 3},             {3},
  };
  std::vector<CodeEntry> entries;
  for (std::size_t i = 0; i < words.size(); ++i) entries.push_back({BitWord(infos[i]), words[i]});
  return PrefixFreeCode::checked(AskAlphabet(2), CodeKind::V2V, std::move(entries));
}

PrefixFreeCode uniform_code(const AskAlphabet& alphabet) {
  const int bits = alphabet.bits_per_symbol();
  std::vector<CodeEntry> entries;
  for (int i = 0; i < alphabet.size(); ++i) {
    std::string word(static_cast<std::size_t>(bits), '0');
    for (int b = 0; b < bits; ++b) {
      if ((i >> (bits - 1 - b)) & 1) word[static_cast<std::size_t>(b)] = '1';
    }
    entries.push_back({BitWord(std::move(word)), SymbolWord{alphabet.amplitude(i)}});
  }
  return PrefixFreeCode::checked(alphabet, CodeKind::Uniform, std::move(entries));
}

}  // namespace shapecode
