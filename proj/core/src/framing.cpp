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

#include "shapecode/framing.hpp"

#include <algorithm>

namespace shapecode {

ParseTables::ParseTables(const PrefixFreeCode& code) : m_(code.alphabet().size()) {
  bin_child_.assign(2, -1);
  bin_entry_.assign(1, -1);
  sym_child_.assign(static_cast<std::size_t>(m_), -1);
  sym_entry_.assign(1, -1);

  const auto entries = code.entries();
  for (std::size_t e = 0; e < entries.size(); ++e) {
    std::int32_t node = 0;
    for (int i = 0; i < entries[e].info.length(); ++i) {
      const auto slot = static_cast<std::size_t>(2 * node + entries[e].info[i]);
      auto child = bin_child_[slot];
      if (child < 0) {
        child = static_cast<std::int32_t>(bin_entry_.size());
        bin_child_[slot] = child;
        bin_entry_.push_back(-1);
        bin_child_.insert(bin_child_.end(), 2, -1);
      }
      node = child;
    }
    bin_entry_[static_cast<std::size_t>(node)] = static_cast<std::int32_t>(e);

    node = 0;
    for (Amplitude a : entries[e].codeword.symbols()) {
      const auto slot = static_cast<std::size_t>(node) * static_cast<std::size_t>(m_) +
                        static_cast<std::size_t>(code.alphabet().index_of(a));
      auto child = sym_child_[slot];
      if (child < 0) {
        child = static_cast<std::int32_t>(sym_entry_.size());
        sym_child_[slot] = child;
        sym_entry_.push_back(-1);
        sym_child_.insert(sym_child_.end(), static_cast<std::size_t>(m_), -1);
      }
      node = child;
    }
    sym_entry_[static_cast<std::size_t>(node)] = static_cast<std::int32_t>(e);
  }
}

std::size_t ParseTables::parse_info(std::span<const Bit> bits, std::size_t pos) const {
  std::int32_t node = 0;
  while (bin_entry_[static_cast<std::size_t>(node)] < 0) {
    const auto base = static_cast<std::size_t>(2 * node);
    if (pos < bits.size()) {
      node = bin_child_[base + (bits[pos] ? 1 : 0)];
      ++pos;
    } else {
      node = bin_child_[base] >= 0 ? bin_child_[base] : bin_child_[base + 1];
    }
    if (node < 0) throw std::logic_error("dictionary is not a complete binary tree");
  }
  return static_cast<std::size_t>(bin_entry_[static_cast<std::size_t>(node)]);
}

std::size_t ParseTables::parse_codeword(std::span<const Amplitude> symbols, std::size_t pos) const {
  std::int32_t node = 0;
  while (sym_entry_[static_cast<std::size_t>(node)] < 0) {
    if (pos >= symbols.size()) return npos;
    const Amplitude a = symbols[pos++];
    if ((a & 1) == 0 || a > 2 * m_ - 1) return npos;
    node = sym_child_[static_cast<std::size_t>(node) * static_cast<std::size_t>(m_) + static_cast<std::size_t>((a - 1) / 2)];
    if (node < 0) return npos;
  }
  return static_cast<std::size_t>(sym_entry_[static_cast<std::size_t>(node)]);
}

namespace {

const PrefixFreeCode& require_valid(const PrefixFreeCode& code) {
  auto report = validate_code(code);
  if (!report.ok()) throw InvalidCode(std::move(report));
  return code;
}

}  // namespace

FrameConfig::FrameConfig(PrefixFreeCode shaping, int k, int n)
    : c1_(std::move(require_valid(shaping))),
      c2_(uniform_code(c1_.alphabet())),
      t1_(c1_),
      k_(k),
      n_(n),
      r2_(c1_.alphabet().bits_per_symbol()),
      lmax_(c1_.max_codeword_length()),
      lmin_(c1_.min_info_length()) {
  if (k_ < 1 || n_ < 1) throw std::invalid_argument("frame needs k >= 1 and n >= 1");
  if (static_cast<long long>(k_) >= static_cast<long long>(n_) * r2_) {
    throw std::invalid_argument("frame rate k/n must be below log2 M = " + std::to_string(r2_));
  }
}

bool FrameConfig::shaping_rate_below_frame_rate() const {
  return code_metrics(c1_).rate < frame_rate();
}

bool switch_check(const FramingState& state, const FrameConfig& config) {
  const long long available = static_cast<long long>(config.n()) - state.symbols_emitted - config.max_codeword_length();
  const long long missing = static_cast<long long>(config.k()) - state.bits_consumed - config.min_info_length();
  const long long r = config.bits_per_symbol();
  // A word may overrun the remaining bits (l_min > k - b), after which no C2
  // symbol is needed, so the requirement never drops below zero.
  const long long required = missing > 0 ? (missing + r - 1) / r : 0;
  return available >= required;
}

std::vector<Amplitude> encode_frame(const FrameConfig& config, std::span<const Bit> bits, FrameTrace* trace) {
  const int k = config.k(), n = config.n(), r2 = config.bits_per_symbol();
  if (static_cast<int>(bits.size()) != k) throw std::invalid_argument("encode_frame needs exactly k bits");
  std::vector<Amplitude> out;
  out.reserve(static_cast<std::size_t>(n));
  FramingState st;

  while (st.bits_consumed < k) {
    if (!st.switched && switch_check(st, config)) {
      if (trace) trace->steps.push_back({true, st.bits_consumed, st.symbols_emitted});
      const auto& entry = config.shaping()[config.shaping_tables().parse_info(bits, static_cast<std::size_t>(st.bits_consumed))];
      const auto symbols = entry.codeword.symbols();
      if (st.symbols_emitted + static_cast<int>(symbols.size()) > n) throw std::logic_error("frame overflow");
      out.insert(out.end(), symbols.begin(), symbols.end());
      st.symbols_emitted += static_cast<int>(symbols.size());
      st.bits_consumed = std::min(k, st.bits_consumed + entry.info.length());
    } else {
      if (!st.switched) {
        st.switched = true;
        if (trace) trace->switch_symbol = st.symbols_emitted;
      }
      if (trace) trace->steps.push_back({false, st.bits_consumed, st.symbols_emitted});
      if (st.symbols_emitted + 1 > n) throw std::logic_error("frame overflow");
      int v = 0;
      for (int j = 0; j < r2; ++j) {
        const int pos = st.bits_consumed + j;
        v = 2 * v + (pos < k ? bits[static_cast<std::size_t>(pos)] : 0);
      }
      out.push_back(config.uniform().alphabet().amplitude(v));
      ++st.symbols_emitted;
      st.bits_consumed = std::min(k, st.bits_consumed + r2);
    }
  }
  if (trace) trace->end_symbol = st.symbols_emitted;
  out.resize(static_cast<std::size_t>(n), Amplitude{1});
  return out;
}

std::vector<Bit> decode_frame(const FrameConfig& config, std::span<const Amplitude> symbols, FrameTrace* trace) {
  const int k = config.k(), n = config.n(), r2 = config.bits_per_symbol();
  if (static_cast<int>(symbols.size()) != n) throw std::invalid_argument("decode_frame needs exactly n symbols");
  std::vector<Bit> out;
  out.reserve(static_cast<std::size_t>(k));
  FramingState st;
  const AskAlphabet& alphabet = config.shaping().alphabet();

  while (st.bits_consumed < k) {
    if (!st.switched && switch_check(st, config)) {
      if (trace) trace->steps.push_back({true, st.bits_consumed, st.symbols_emitted});
      const auto e = config.shaping_tables().parse_codeword(symbols, static_cast<std::size_t>(st.symbols_emitted));
      if (e == ParseTables::npos) {
        throw CorruptFrame("no codeword matches at symbol " + std::to_string(st.symbols_emitted));
      }
      const auto& entry = config.shaping()[e];
      const int take = std::min(entry.info.length(), k - st.bits_consumed);
      for (int i = 0; i < take; ++i) out.push_back(static_cast<Bit>(entry.info[i]));
      st.bits_consumed += take;
      st.symbols_emitted += entry.codeword.length();
    } else {
      if (!st.switched) {
        st.switched = true;
        if (trace) trace->switch_symbol = st.symbols_emitted;
      }
      if (trace) trace->steps.push_back({false, st.bits_consumed, st.symbols_emitted});
      if (st.symbols_emitted >= n) throw CorruptFrame("frame ended before k bits were decoded");
      const Amplitude a = symbols[static_cast<std::size_t>(st.symbols_emitted)];
      if (!alphabet.contains(a)) throw CorruptFrame("amplitude " + std::to_string(a) + " outside the alphabet");
      const int v = alphabet.index_of(a);
      const int take = std::min(r2, k - st.bits_consumed);
      for (int j = 0; j < take; ++j) out.push_back(static_cast<Bit>((v >> (r2 - 1 - j)) & 1));
      st.bits_consumed += take;
      ++st.symbols_emitted;
    }
  }
  if (trace) trace->end_symbol = st.symbols_emitted;
  return out;
}

std::vector<Amplitude> encode_stream(const PrefixFreeCode& code, std::span<const Bit> bits) {
  const ParseTables tables(require_valid(code));
  std::vector<Amplitude> out;
  std::size_t pos = 0;
  while (pos < bits.size()) {
    const auto& entry = code[tables.parse_info(bits, pos)];
    const auto symbols = entry.codeword.symbols();
    out.insert(out.end(), symbols.begin(), symbols.end());
    pos += static_cast<std::size_t>(entry.info.length());
  }
  return out;
}

std::vector<std::uint8_t> pack_bits(std::span<const Bit> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

std::vector<Bit> unpack_bits(std::span<const std::uint8_t> bytes) {
  std::vector<Bit> out;
  out.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<Bit>((b >> i) & 1));
  }
  return out;
}

}  // namespace shapecode
