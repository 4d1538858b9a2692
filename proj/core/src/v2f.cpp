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

#include "shapecode/v2f.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "shapecode/mbdist.hpp"
#include "shapecode/parallel.hpp"

namespace shapecode {

void require_builder_alphabet(int m) {
  if (m != 2 && m != 4 && m != 8 && m != 16) {
    throw std::invalid_argument("builders accept M in {2, 4, 8, 16}, got " + std::to_string(m));
  }
}

std::vector<SymbolWord> balanced_codebook(const AskAlphabet& alphabet, int v) {
  if (v < 1) throw std::invalid_argument("codeword length must be >= 1");
  std::size_t count = 1;
  for (int i = 0; i < v; ++i) {
    count *= static_cast<std::size_t>(alphabet.size());
    if (count > kMaxV2fCardinality) {
      throw std::invalid_argument("M^v exceeds the V2F cardinality cap of 4096");
    }
  }
  std::vector<SymbolWord> out;
  out.reserve(count);
  std::vector<int> digits(static_cast<std::size_t>(v), 0);
  for (std::size_t w = 0; w < count; ++w) {
    std::vector<Amplitude> symbols;
    symbols.reserve(digits.size());
    for (int d : digits) symbols.push_back(alphabet.amplitude(d));
    out.emplace_back(std::move(symbols));
    for (int pos = v - 1; pos >= 0; --pos) {
      auto& d = digits[static_cast<std::size_t>(pos)];
      if (++d < alphabet.size()) break;
      d = 0;
    }
  }
  return out;
}

PrefixFreeCode code_from_dyadic(const AskAlphabet& alphabet, CodeKind kind, std::span<const SymbolWord> codebook,
                                const DyadicPmf& dyadic) {
  if (codebook.size() != dyadic.size()) throw std::invalid_argument("codebook and dyadic PMF sizes differ");
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < codebook.size(); ++i) {
    if (!dyadic.pruned(i)) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dyadic.lengths[a] != dyadic.lengths[b]) return dyadic.lengths[a] < dyadic.lengths[b];
    return codebook[a].energy() < codebook[b].energy();
  });

  DyadicPmf sorted;
  for (std::size_t i : order) sorted.lengths.push_back(dyadic.lengths[i]);
  const auto dictionary = dyadic_to_dictionary(sorted);

  std::vector<CodeEntry> entries;
  entries.reserve(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) entries.push_back({*dictionary[j], codebook[order[j]]});
  return PrefixFreeCode::checked(alphabet, kind, std::move(entries));
}

namespace {

std::optional<BuiltCode> finish(const AskAlphabet& alphabet, std::span<const SymbolWord> codebook,
                                const Pmf& target_pmf, int v) {
  const DyadicPmf dyadic = ghc_dyadic(target_pmf);
  if (dyadic.survivors() < 2) return std::nullopt;
  BuiltCode built{code_from_dyadic(alphabet, CodeKind::V2F, codebook, dyadic), {}, 0.0, v, 0};
  built.metrics = code_metrics(built.code);
  built.gap_db = energy_gap_db(built.metrics.energy, built.metrics.rate, alphabet);
  return built;
}

}  // namespace

std::optional<BuiltCode> build_v2f(int m, int v, double target_rate) {
  require_builder_alphabet(m);
  const AskAlphabet alphabet(m);
  const auto codebook = balanced_codebook(alphabet, v);
  // Balanced trees factorize, so the scalar entropy target fixes lambda.
  const double lambda = lambda_for_rate(alphabet, target_rate);
  return finish(alphabet, codebook, mb_codeword_pmf(codebook, lambda), v);
}

CodeLibrary sweep_v2f(int m, int v_max, const RateGrid& grid, double window) {
  require_builder_alphabet(m);
  if (window <= 0.0) window = grid.step > 0.0 ? grid.step : 0.01;
  const AskAlphabet alphabet(m);

  std::vector<std::vector<SymbolWord>> codebooks;
  for (int v = 1; v <= v_max; ++v) {
    std::size_t count = 1;
    for (int i = 0; i < v; ++i) count *= static_cast<std::size_t>(m);
    if (count > kMaxV2fCardinality) break;
    codebooks.push_back(balanced_codebook(alphabet, v));
  }
  if (codebooks.empty()) throw std::invalid_argument("v_max must be >= 1");

  CodeLibrary library(grid.targets.size());
  parallel_for(grid.targets.size(), [&](std::size_t i) {
    const double target = grid.targets[i];
    library[i].target = target;
    const double lambda = lambda_for_rate(alphabet, target);
    for (std::size_t vi = 0; vi < codebooks.size(); ++vi) {
      auto built = finish(alphabet, codebooks[vi], mb_codeword_pmf(codebooks[vi], lambda), static_cast<int>(vi) + 1);
      if (!built) continue;
      const double r = built->metrics.rate;
      if (r < target || r >= target + window) continue;
      if (!library[i].code || built->metrics.energy < library[i].code->metrics.energy) library[i].code = std::move(built);
    }
  });
  return library;
}

}  // namespace shapecode
