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
#include <vector>

#include "shapecode/code.hpp"

namespace shapecode {

using Bit = std::uint8_t;  // 0 or 1

/// Binary parse tree over a dictionary, and M-ary parse tree over a codebook.
class ParseTables {
 public:
  explicit ParseTables(const PrefixFreeCode& code);

  /// Entry whose information word starts bits[pos...]. When the input ends
  /// inside the tree, the lexicographically first completion is taken.
  std::size_t parse_info(std::span<const Bit> bits, std::size_t pos) const;
  /// Entry whose codeword starts symbols[pos...], or npos when none does.
  std::size_t parse_codeword(std::span<const Amplitude> symbols, std::size_t pos) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  int m_;
  std::vector<std::int32_t> bin_child_;  // 2 per node
  std::vector<std::int32_t> bin_entry_;
  std::vector<std::int32_t> sym_child_;  // M per node
  std::vector<std::int32_t> sym_entry_;
};

/// k bits into exactly n symbols using a shaping code C1 and the uniform
/// code C2 over the same alphabet. Requires 1 <= k < n log2 M.
class FrameConfig {
 public:
  FrameConfig(PrefixFreeCode shaping, int k, int n);

  const PrefixFreeCode& shaping() const { return c1_; }
  const PrefixFreeCode& uniform() const { return c2_; }
  const ParseTables& shaping_tables() const { return t1_; }
  int k() const { return k_; }
  int n() const { return n_; }
  int bits_per_symbol() const { return r2_; }
  int max_codeword_length() const { return lmax_; }
  int min_info_length() const { return lmin_; }
  double frame_rate() const { return static_cast<double>(k_) / n_; }
  /// R_C1 < k / n. Not required for correct framing, only for the intended
  /// operating regime.
  bool shaping_rate_below_frame_rate() const;

 private:
  PrefixFreeCode c1_;
  PrefixFreeCode c2_;
  ParseTables t1_;
  int k_, n_, r2_, lmax_, lmin_;
};

struct FramingState {
  int bits_consumed = 0;
  int symbols_emitted = 0;
  bool switched = false;
};

/// True keeps C1: n - s - lmax >= ceil((k - b - lmin) / log2 M).
bool switch_check(const FramingState& state, const FrameConfig& config);

struct TraceStep {
  bool shaping;  // C1 word (true) or C2 symbol
  int bits_before;
  int symbols_before;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct FrameTrace {
  std::vector<TraceStep> steps;
  int switch_symbol = -1;  // symbols emitted when C2 took over, -1 if never
  int end_symbol = -1;     // symbols emitted once all k bits were represented
};

class CorruptFrame : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exactly k bits in, exactly n symbols out.
std::vector<Amplitude> encode_frame(const FrameConfig& config, std::span<const Bit> bits, FrameTrace* trace = nullptr);

/// Exactly n symbols in, exactly k bits out. Throws CorruptFrame when a
/// symbol sequence matches no codeword.
std::vector<Bit> decode_frame(const FrameConfig& config, std::span<const Amplitude> symbols,
                              FrameTrace* trace = nullptr);

/// Unframed encoding of an arbitrary bit string; the last word follows the
/// same prefix rule as a frame.
std::vector<Amplitude> encode_stream(const PrefixFreeCode& code, std::span<const Bit> bits);

/// MSB-first packing.
std::vector<std::uint8_t> pack_bits(std::span<const Bit> bits);
std::vector<Bit> unpack_bits(std::span<const std::uint8_t> bytes);

}  // namespace shapecode
