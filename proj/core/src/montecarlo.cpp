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

#include "shapecode/montecarlo.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <tuple>

#include "shapecode/mbdist.hpp"
#include "shapecode/parallel.hpp"

namespace shapecode {

std::vector<Bit> SplitMix64::bits(std::size_t count) {
  std::vector<Bit> out(count);
  for (std::size_t i = 0; i < count; i += 64) {
    const std::uint64_t word = next();
    const std::size_t take = std::min<std::size_t>(64, count - i);
    for (std::size_t j = 0; j < take; ++j) out[i + j] = static_cast<Bit>((word >> (63 - j)) & 1);
  }
  return out;
}

std::vector<Bit> frame_bits(std::uint64_t seed, std::uint64_t frame, int k) {
  SplitMix64 rng(seed + frame);
  return rng.bits(static_cast<std::size_t>(k));
}

McResult mc_energy(const FrameConfig& config, std::uint64_t frames, std::uint64_t seed) {
  if (frames < 1) throw std::invalid_argument("mc_energy needs at least one frame");
  struct PerFrame {
    std::uint64_t energy;
    int switch_symbol;
    int end_symbol;
  };
  std::vector<PerFrame> per(frames);
  parallel_for(frames, [&](std::size_t i) {
    const auto bits = frame_bits(seed, i, config.k());
    FrameTrace trace;
    const auto symbols = encode_frame(config, bits, &trace);
    std::uint64_t e = 0;
    for (Amplitude a : symbols) e += static_cast<std::uint64_t>(a) * a;
    per[i] = {e, trace.switch_symbol, trace.end_symbol};
  });

  McResult r;
  r.frames = frames;
  r.seed = seed;
  r.switch_histogram.assign(static_cast<std::size_t>(config.n()) + 1, 0);
  r.end_histogram.assign(static_cast<std::size_t>(config.n()) + 1, 0);
  for (const auto& f : per) {
    r.total_energy += f.energy;
    if (f.switch_symbol >= 0) {
      ++r.switched_frames;
      ++r.switch_histogram[static_cast<std::size_t>(f.switch_symbol)];
    }
    ++r.end_histogram[static_cast<std::size_t>(f.end_symbol)];
  }
  r.total_symbols = frames * static_cast<std::uint64_t>(config.n());
  r.mean_energy = static_cast<double>(r.total_energy) / static_cast<double>(r.total_symbols);
  r.gap_db = energy_gap_db(r.mean_energy, config.frame_rate(), config.shaping().alphabet());
  return r;
}

namespace {

std::vector<Bit> directed_bits(int kind, int k) {
  std::vector<Bit> bits(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    bits[static_cast<std::size_t>(i)] = kind == 0 ? 0 : kind == 1 ? 1 : static_cast<Bit>(i & 1);
  }
  return bits;
}

std::string check_frame(const FrameConfig& config, const std::vector<Bit>& bits) {
  FrameTrace enc, dec;
  std::vector<Amplitude> symbols;
  try {
    symbols = encode_frame(config, bits, &enc);
  } catch (const std::exception& e) {
    return std::string("encoder: ") + e.what();
  }
  if (static_cast<int>(symbols.size()) != config.n()) return "encoded frame has " + std::to_string(symbols.size()) + " symbols";
  std::vector<Bit> decoded;
  try {
    decoded = decode_frame(config, symbols, &dec);
  } catch (const std::exception& e) {
    return std::string("decoder: ") + e.what();
  }
  if (static_cast<int>(decoded.size()) != config.k()) return "decoded frame has " + std::to_string(decoded.size()) + " bits";
  if (decoded != bits) return "decoded bits differ";
  if (enc.steps != dec.steps || enc.switch_symbol != dec.switch_symbol || enc.end_symbol != dec.end_symbol) {
    return "encoder and decoder traces differ";
  }
  return {};
}

}  // namespace

RoundtripReport roundtrip_matrix(const std::vector<RoundtripCell>& cells, std::uint64_t frames, std::uint64_t seed) {
  RoundtripReport report;
  report.cells = cells.size();
  std::vector<std::unique_ptr<FrameConfig>> configs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    try {
      configs.push_back(std::make_unique<FrameConfig>(cells[c].code, cells[c].k, cells[c].n));
    } catch (const std::exception& e) {
      configs.push_back(nullptr);
      report.failures.push_back({c, cells[c].label, cells[c].k, cells[c].n, seed, 0, std::string("config: ") + e.what()});
    }
  }

  const std::uint64_t per_cell = frames + 3;
  std::mutex mu;
  parallel_for(cells.size() * per_cell, [&](std::size_t task) {
    const std::size_t c = task / per_cell;
    const std::uint64_t slot = task % per_cell;
    if (!configs[c]) return;
    const auto& cfg = *configs[c];
    const bool directed = slot >= frames;
    const std::int64_t frame = directed ? -static_cast<std::int64_t>(slot - frames) - 1 : static_cast<std::int64_t>(slot);
    const auto bits = directed ? directed_bits(static_cast<int>(slot - frames), cfg.k()) : frame_bits(seed, slot, cfg.k());
    auto reason = check_frame(cfg, bits);
    if (reason.empty()) return;
    std::lock_guard lock(mu);
    report.failures.push_back({c, cells[c].label, cells[c].k, cells[c].n, seed, frame, std::move(reason)});
  });
  std::sort(report.failures.begin(), report.failures.end(), [](const auto& a, const auto& b) {
    return std::tie(a.cell, a.frame) < std::tie(b.cell, b.frame);
  });
  report.frames_checked = cells.size() * per_cell;
  return report;
}

}  // namespace shapecode
