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

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shapecode {

using Amplitude = std::uint8_t;

/// Unipolar M-ASK alphabet {1, 3, ..., 2M-1}. Energy of amplitude a is a*a.
class AskAlphabet {
 public:
  static constexpr int kMaxSize = 128;

  explicit AskAlphabet(int m);

  int size() const { return m_; }
  Amplitude amplitude(int index) const { return static_cast<Amplitude>(2 * index + 1); }
  int energy(int index) const { return (2 * index + 1) * (2 * index + 1); }
  bool contains(Amplitude a) const { return (a & 1) != 0 && a <= 2 * m_ - 1; }
  /// Index of an amplitude, i.e. (a - 1) / 2. Caller checks contains().
  int index_of(Amplitude a) const { return (a - 1) / 2; }
  /// log2(M); throws std::invalid_argument unless M is a power of two.
  int bits_per_symbol() const;
  /// Mean energy of the uniform distribution, (4M^2 - 1) / 3.
  double uniform_energy() const;

  friend bool operator==(const AskAlphabet&, const AskAlphabet&) = default;

 private:
  int m_;
};

/// Information word over {0,1}, stored as a string of '0'/'1' characters.
class BitWord {
 public:
  BitWord() = default;
  explicit BitWord(std::string bits);

  const std::string& str() const { return bits_; }
  int length() const { return static_cast<int>(bits_.size()); }
  bool empty() const { return bits_.empty(); }
  int operator[](int i) const { return bits_[static_cast<std::size_t>(i)] == '1' ? 1 : 0; }
  bool is_prefix_of(const BitWord& other) const;

  friend auto operator<=>(const BitWord&, const BitWord&) = default;

 private:
  std::string bits_;
};

/// Codeword over the amplitude alphabet.
class SymbolWord {
 public:
  SymbolWord() = default;
  explicit SymbolWord(std::vector<Amplitude> symbols) : symbols_(std::move(symbols)) {}
  SymbolWord(std::initializer_list<Amplitude> symbols) : symbols_(symbols) {}

  std::span<const Amplitude> symbols() const { return symbols_; }
  int length() const { return static_cast<int>(symbols_.size()); }
  bool empty() const { return symbols_.empty(); }
  /// Sum of squared amplitudes.
  std::int64_t energy() const;
  bool is_prefix_of(const SymbolWord& other) const;
  std::string to_string() const;

  friend auto operator<=>(const SymbolWord&, const SymbolWord&) = default;

 private:
  std::vector<Amplitude> symbols_;
};

enum class CodeKind { V2F, F2V, V2V, Uniform };

std::string_view to_string(CodeKind kind);
CodeKind parse_code_kind(std::string_view text);

struct CodeEntry {
  BitWord info;
  SymbolWord codeword;

  friend bool operator==(const CodeEntry&, const CodeEntry&) = default;
};

/// Bijection between a binary dictionary (left tree) and an ASK codebook
/// (right tree). Construction does not validate; see validate_code() and
/// PrefixFreeCode::checked().
class PrefixFreeCode {
 public:
  PrefixFreeCode(AskAlphabet alphabet, CodeKind kind, std::vector<CodeEntry> entries);

  /// Constructs and throws InvalidCode when validate_code() reports a problem.
  static PrefixFreeCode checked(AskAlphabet alphabet, CodeKind kind, std::vector<CodeEntry> entries);

  const AskAlphabet& alphabet() const { return alphabet_; }
  CodeKind kind() const { return kind_; }
  std::span<const CodeEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const CodeEntry& operator[](std::size_t i) const { return entries_[i]; }

  std::vector<int> info_lengths() const;
  std::vector<int> codeword_lengths() const;
  std::vector<std::int64_t> codeword_energies() const;
  int max_codeword_length() const;
  int min_info_length() const;
  int max_info_length() const;

  friend bool operator==(const PrefixFreeCode&, const PrefixFreeCode&) = default;

 private:
  AskAlphabet alphabet_;
  CodeKind kind_;
  std::vector<CodeEntry> entries_;
};

struct ValidationReport {
  bool dictionary_prefix_free = true;
  bool codebook_prefix_free = true;
  bool kraft_complete = true;  // sum of 2^-l(b) is exactly 1
  bool no_duplicates = true;
  bool no_empty_words = true;
  bool symbols_in_alphabet = true;
  bool enough_entries = true;  // N >= 2
  double kraft_sum = 0.0;
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

class InvalidCode : public std::invalid_argument {
 public:
  explicit InvalidCode(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

ValidationReport validate_code(const PrefixFreeCode& code);

/// True iff sum_n 2^-lengths[n] == 1 exactly. Lengths must be >= 0.
bool kraft_equals_one(std::span<const int> lengths);

struct CodeMetrics {
  double energy = 0.0;  // average energy per code symbol, E_C
  double rate = 0.0;    // information bits per code symbol, R_C
  double expected_codeword_length = 0.0;
  double expected_info_length = 0.0;
  std::vector<double> leaf_pmf;  // p_n = 2^-l(b_n)
};

/// Average symbol energy and resolution rate under equiprobable input bits.
/// Dyadic sums are exact (128-bit integers) whenever max l(b) <= 62.
/// Throws InvalidCode for codes that fail validation.
CodeMetrics code_metrics(const PrefixFreeCode& code);

/// Same computation from per-entry l(b), l(x) and ||x||^2 without building
/// a code. No validation is performed.
CodeMetrics metrics_from_lengths(std::span<const int> info_lengths, std::span<const int> codeword_lengths,
                                 std::span<const std::int64_t> codeword_energies);

/// The 8-entry 2-ASK V2V example code with l(B) = [1,3,3,3,4,5,6,6],
/// l(X) = [7,7,6,5,4,3,2,1], energies [7,15,14,13,12,11,10,9].
PrefixFreeCode canonical_table1c();

/// log2(M) bits -> one amplitude, lexicographic (bits value i -> 2i+1).
PrefixFreeCode uniform_code(const AskAlphabet& alphabet);

}  // namespace shapecode
