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

#include "shapecode/ghc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace shapecode {

double DyadicPmf::probability(std::size_t n) const {
  return pruned(n) ? 0.0 : std::ldexp(1.0, -lengths[n]);
}

std::size_t DyadicPmf::survivors() const {
  return static_cast<std::size_t>(std::count_if(lengths.begin(), lengths.end(), [](int l) { return l != kPruned; }));
}

std::vector<double> DyadicPmf::to_vector() const {
  std::vector<double> out(lengths.size());
  for (std::size_t n = 0; n < lengths.size(); ++n) out[n] = probability(n);
  return out;
}

namespace {

struct MergeNode {
  double weight;
  int left = -1;
  int right = -1;
};

struct HeapItem {
  double weight;
  int id;
  // std::priority_queue is a max-heap; invert for smallest weight, then smallest id.
  bool operator<(const HeapItem& o) const {
    if (weight != o.weight) return weight > o.weight;
    return id > o.id;
  }
};

}  // namespace

DyadicPmf ghc_dyadic(std::span<const double> target) {
  if (target.empty()) throw std::invalid_argument("GHC target is empty");
  bool any_positive = false;
  for (double w : target) {
    if (!(w >= 0.0)) throw std::invalid_argument("GHC target has a negative or NaN entry");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw std::invalid_argument("GHC target has no positive entry");

  const int n = static_cast<int>(target.size());
  std::vector<MergeNode> nodes;
  nodes.reserve(2 * target.size());
  std::priority_queue<HeapItem> heap;
  for (int i = 0; i < n; ++i) {
    nodes.push_back({target[static_cast<std::size_t>(i)]});
    heap.push({target[static_cast<std::size_t>(i)], i});
  }

  while (heap.size() > 1) {
    const HeapItem b = heap.top();
    heap.pop();
    const HeapItem a = heap.top();
    heap.pop();
    if (a.weight >= 4.0 * b.weight) {
      heap.push(a);  // b's subtree is dropped
      continue;
    }
    const int id = static_cast<int>(nodes.size());
    const double w = 2.0 * std::sqrt(a.weight * b.weight);
    nodes.push_back({w, a.id, b.id});
    heap.push({w, id});
  }

  DyadicPmf out;
  out.lengths.assign(target.size(), DyadicPmf::kPruned);
  // Depth-first walk of the merge tree read off the leaf depths directly.
  std::vector<std::pair<int, int>> stack{{heap.top().id, 0}};
  while (!stack.empty()) {
    const auto [id, depth] = stack.back();
    stack.pop_back();
    if (id < n) {
      out.lengths[static_cast<std::size_t>(id)] = depth;
      continue;
    }
    const auto& node = nodes[static_cast<std::size_t>(id)];
    stack.push_back({node.right, depth + 1});
    stack.push_back({node.left, depth + 1});
  }
  return out;
}

std::vector<std::optional<BitWord>> dyadic_to_dictionary(const DyadicPmf& dyadic) {
  std::vector<std::size_t> order;
  std::vector<int> surviving_lengths;
  for (std::size_t i = 0; i < dyadic.size(); ++i) {
    if (dyadic.pruned(i)) continue;
    order.push_back(i);
    surviving_lengths.push_back(dyadic.lengths[i]);
  }
  if (!kraft_equals_one(surviving_lengths)) throw std::invalid_argument("dyadic PMF does not sum to one");
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dyadic.lengths[a] < dyadic.lengths[b]; });

  std::vector<std::optional<BitWord>> out(dyadic.size());
  // Canonical code: increment the previous word, then extend with zeros.
  std::string word;
  bool first = true;
  for (std::size_t i : order) {
    const auto len = static_cast<std::size_t>(dyadic.lengths[i]);
    if (first) {
      word.assign(len, '0');
      first = false;
    } else {
      std::size_t pos = word.size();
      while (pos > 0 && word[pos - 1] == '1') word[--pos] = '0';
      if (pos == 0) throw std::logic_error("canonical code overflow");
      word[pos - 1] = '1';
      word.resize(len, '0');
    }
    out[i] = BitWord(word);
  }
  return out;
}

}  // namespace shapecode
