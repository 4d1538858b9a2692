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

namespace shapecode {

/// Dyadic PMF stored as bit-lengths: entry n has probability 2^-lengths[n],
/// or 0 when lengths[n] == kPruned.
struct DyadicPmf {
  static constexpr int kPruned = -1;

  std::vector<int> lengths;

  std::size_t size() const { return lengths.size(); }
  bool pruned(std::size_t n) const { return lengths[n] == kPruned; }
  double probability(std::size_t n) const;
  std::size_t survivors() const;
  std::vector<double> to_vector() const;
};

/// Geometric Huffman coding: the dyadic PMF d minimizing D(d || target).
///
/// The two smallest weights q_a >= q_b are combined repeatedly. If
/// q_a >= 4 q_b, q_b's subtree is dropped (probability 0) and q_a carries
/// over unchanged; otherwise the pair merges into a node of weight
/// 2 sqrt(q_a q_b) one level deeper. Equal weights are taken in index order.
/// Throws std::invalid_argument when no entry is positive or any is negative.
DyadicPmf ghc_dyadic(std::span<const double> target);

/// Canonical prefix-free bit words with l(b_n) = lengths[n]: surviving
/// entries are taken shortest first (ties by index) and receive consecutive
/// lexicographic words. Pruned entries map to std::nullopt.
std::vector<std::optional<BitWord>> dyadic_to_dictionary(const DyadicPmf& dyadic);

}  // namespace shapecode
