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
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shapecode/code.hpp"

namespace shapecode {

/// Reference to a stored optimal sub-tree: TreeSet::optimal(size)[index].
struct ChildRef {
  int size;
  int index;
};

/// Right tree summarized by leaf count, sum of leaf depths and sum of leaf
/// codeword energies. The j-th child (1-based) hangs off the edge labelled
/// with amplitude 2j-1.
struct TreeRecord {
  int leaves = 1;
  int sum_depth = 0;
  std::int64_t sum_energy = 0;
  std::vector<ChildRef> children;
};

/// Per leaf count N, one minimum-energy tree for every achievable sum depth.
class TreeSet {
 public:
  TreeSet(int alphabet_size, std::vector<std::vector<TreeRecord>> by_size);

  int alphabet_size() const { return m_; }
  int max_leaves() const { return static_cast<int>(by_size_.size()) - 1; }
  /// Records of size n, sorted by ascending sum depth.
  const std::vector<TreeRecord>& optimal(int n) const;
  /// Record with the given sum depth, or nullptr when not achievable.
  const TreeRecord* find(int n, int sum_depth) const;
  std::size_t total_records() const;

 private:
  int m_;
  std::vector<std::vector<TreeRecord>> by_size_;  // index 0 unused
};

/// Bottom-up dynamic program over 2+-trees with at most M children per node.
/// Children are composed in non-increasing size order from the already
/// optimal smaller sets; per sum depth the first minimum-energy candidate
/// is kept (J ascending, size tuples lexicographically descending, child
/// sum depths ascending).
/// Requires M in {2, 4}; N_max <= 64 for M = 2 and <= 32 for M = 4.
TreeSet enumerate_optimal_trees(int m, int n_max);

struct TreeSummary {
  int sum_depth;
  std::int64_t sum_energy;
  std::string shape;  // parenthesized form, e.g. ((13)(13))
};

/// Every 2+-tree with n leaves and at most m children per node, without any
/// pruning. Guarded to m = 2, n <= 10 and m = 4, n <= 7.
std::vector<TreeSummary> brute_force_trees(int m, int n);

struct TreeBounds {
  int nu_min_formula;  // closed form; not the true minimum when n is not a power of m
  int nu_max;          // (n + 2)(n - 1) / 2
};

TreeBounds tree_bounds(int m, int n);

/// Leaf codewords in depth-first order, children left to right.
std::vector<SymbolWord> tree_to_codebook(const TreeSet& set, const TreeRecord& tree);

/// Parenthesized shape of a stored record, same notation as brute_force_trees.
std::string tree_shape(const TreeSet& set, const TreeRecord& tree);

/// {"m": M, "sizes": [{"n": N, "trees": [{"nu":..,"omega":..}, ...]}, ...]}
nlohmann::json tree_set_to_json(const TreeSet& set);

}  // namespace shapecode
