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

#include <optional>
#include <span>
#include <vector>

#include "shapecode/code.hpp"
#include "shapecode/ghc.hpp"
#include "shapecode/library.hpp"

namespace shapecode {

inline constexpr std::size_t kMaxV2fCardinality = 4096;

/// Throws unless M is one of 2, 4, 8, 16.
void require_builder_alphabet(int m);

/// All M^v words of length v in lexicographic order.
std::vector<SymbolWord> balanced_codebook(const AskAlphabet& alphabet, int v);

/// Pairs codewords with the canonical dictionary of a dyadic PMF. Pruned
/// codewords are dropped; surviving entries are ordered by descending
/// probability, then ascending codeword energy, then input order.
PrefixFreeCode code_from_dyadic(const AskAlphabet& alphabet, CodeKind kind, std::span<const SymbolWord> codebook,
                                const DyadicPmf& dyadic);

/// Balanced codebook of length v with the GHC-quantized codeword-level MB
/// distribution at scalar entropy target_rate. Returns std::nullopt when
/// fewer than two codewords survive quantization. Throws on M^v > 4096 or a
/// rate outside (0, log2 M].
std::optional<BuiltCode> build_v2f(int m, int v, double target_rate);

/// For every target, the lowest-energy code over v = 1..v_max (M^v <= 4096)
/// whose realized rate lies in [target, target + window). window defaults to
/// the grid step, or 0.01 for a single-target grid.
CodeLibrary sweep_v2f(int m, int v_max, const RateGrid& grid, double window = 0.0);

}  // namespace shapecode
