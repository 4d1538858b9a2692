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
#include <string>
#include <string_view>
#include <vector>

#include "shapecode/framing.hpp"

namespace shapecode {

/// SplitMix64 (Steele, Lea, Flood). One 64-bit state, golden-ratio increment.
class SplitMix64 {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Bits are taken MSB first from successive outputs.
  std::vector<Bit> bits(std::size_t count);

 private:
  std::uint64_t state_;
};

/// Random bits of frame i are drawn from SplitMix64(seed + i).
std::vector<Bit> frame_bits(std::uint64_t seed, std::uint64_t frame, int k);

struct McResult {
  std::uint64_t frames = 0;
  std::uint64_t seed = 0;
  std::uint64_t total_energy = 0;  // sum of squared amplitudes over all symbols
  std::uint64_t total_symbols = 0;
  double mean_energy = 0.0;
  double gap_db = 0.0;
  std::uint64_t switched_frames = 0;
  std::vector<std::uint64_t> switch_histogram;  // index = symbols emitted at the switch, 0..n
  std::vector<std::uint64_t> end_histogram;     // index = symbols emitted when bit k was placed, 0..n
};

McResult mc_energy(const FrameConfig& config, std::uint64_t frames, std::uint64_t seed);

struct RoundtripCell {
  PrefixFreeCode code;
  int k;
  int n;
  std::string label;
};

struct RoundtripFailure {
  std::size_t cell;
  std::string label;
  int k;
  int n;
  std::uint64_t seed;
  std::int64_t frame;  // -1, -2, -3: all zeros, all ones, alternating
  std::string reason;
};

struct RoundtripReport {
  std::size_t cells = 0;
  std::uint64_t frames_checked = 0;
  std::vector<RoundtripFailure> failures;

  bool ok() const { return failures.empty(); }
};

/// Per cell: `frames` random frames plus three directed vectors. Checks
/// frame sizes, bit equality and identical encoder/decoder decision traces.
RoundtripReport roundtrip_matrix(const std::vector<RoundtripCell>& cells, std::uint64_t frames, std::uint64_t seed);

}  // namespace shapecode
