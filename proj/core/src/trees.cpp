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

#include "shapecode/trees.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace shapecode {

TreeSet::TreeSet(int alphabet_size, std::vector<std::vector<TreeRecord>> by_size)
    : m_(alphabet_size), by_size_(std::move(by_size)) {}

const std::vector<TreeRecord>& TreeSet::optimal(int n) const {
  if (n < 1 || n > max_leaves()) throw std::out_of_range("tree size " + std::to_string(n) + " not enumerated");
  return by_size_[static_cast<std::size_t>(n)];
}

const TreeRecord* TreeSet::find(int n, int sum_depth) const {
  const auto& set = optimal(n);
  auto it = std::lower_bound(set.begin(), set.end(), sum_depth,
                             [](const TreeRecord& r, int nu) { return r.sum_depth < nu; });
  return it != set.end() && it->sum_depth == sum_depth ? &*it : nullptr;
}

std::size_t TreeSet::total_records() const {
  std::size_t total = 0;
  for (const auto& s : by_size_) total += s.size();
  return total;
}

namespace {

constexpr std::int64_t kNoTree = std::numeric_limits<std::int64_t>::max();

int edge_energy(int j) {  // 1-based child index
  return (2 * j - 1) * (2 * j - 1);
}

// Non-increasing size tuples of length parts summing to total, each in
// [1, cap], emitted in lexicographically descending order.
void for_each_partition(int total, int parts, int cap, std::vector<int>& prefix,
                        const std::function<void(const std::vector<int>&)>& fn) {
  if (parts == 0) {
    if (total == 0) fn(prefix);
    return;
  }
  for (int s = std::min(cap, total - (parts - 1)); s >= 1; --s) {
    if (s * parts < total) break;  // remaining parts cannot reach the total
    prefix.push_back(s);
    for_each_partition(total - s, parts - 1, s, prefix, fn);
    prefix.pop_back();
  }
}

struct Partial {
  std::int64_t energy = kNoTree;
  std::vector<int> choice;  // record index per child so far
};

}  // namespace

TreeSet enumerate_optimal_trees(int m, int n_max) {
  if (m != 2 && m != 4) throw std::invalid_argument("tree enumeration supports M in {2, 4}");
  const int cap = m == 2 ? 64 : 32;
  if (n_max < 1 || n_max > cap) {
    throw std::invalid_argument("N_max must be in [1, " + std::to_string(cap) + "] for M = " + std::to_string(m));
  }

  std::vector<std::vector<TreeRecord>> by_size(static_cast<std::size_t>(n_max) + 1);
  by_size[1].push_back(TreeRecord{1, 0, 0, {}});

  for (int n = 2; n <= n_max; ++n) {
    const int nu_max = tree_bounds(m, n).nu_max;
    std::vector<std::int64_t> best(static_cast<std::size_t>(nu_max) + 1, kNoTree);
    std::vector<std::vector<ChildRef>> best_children(best.size());

    std::vector<int> prefix;
    for (int parts = 2; parts <= std::min(m, n); ++parts) {
      for_each_partition(n, parts, n - 1, prefix, [&](const std::vector<int>& sizes) {
        // Min-plus convolution over the children's sum depths.
        std::int64_t base = 0;
        for (int j = 0; j < parts; ++j) base += static_cast<std::int64_t>(edge_energy(j + 1)) * sizes[static_cast<std::size_t>(j)];

        std::vector<Partial> acc(1);
        acc[0].energy = 0;
        for (int j = 0; j < parts; ++j) {
          const auto& child_set = by_size[static_cast<std::size_t>(sizes[static_cast<std::size_t>(j)])];
          const int child_max = child_set.back().sum_depth;
          std::vector<Partial> next(acc.size() + static_cast<std::size_t>(child_max));
          for (std::size_t s = 0; s < acc.size(); ++s) {
            if (acc[s].energy == kNoTree) continue;
            for (std::size_t c = 0; c < child_set.size(); ++c) {
              const auto& rec = child_set[c];
              auto& slot = next[s + static_cast<std::size_t>(rec.sum_depth)];
              const std::int64_t e = acc[s].energy + rec.sum_energy;
              if (e < slot.energy) {
                slot.energy = e;
                slot.choice = acc[s].choice;
                slot.choice.push_back(static_cast<int>(c));
              }
            }
          }
          acc = std::move(next);
        }

        for (std::size_t s = 0; s < acc.size(); ++s) {
          if (acc[s].energy == kNoTree) continue;
          const auto nu = static_cast<std::size_t>(n) + s;
          const std::int64_t omega = base + acc[s].energy;
          if (omega < best[nu]) {
            best[nu] = omega;
            best_children[nu].clear();
            for (int j = 0; j < parts; ++j) {
              best_children[nu].push_back({sizes[static_cast<std::size_t>(j)], acc[s].choice[static_cast<std::size_t>(j)]});
            }
          }
        }
      });
    }

    auto& out = by_size[static_cast<std::size_t>(n)];
    for (std::size_t nu = 0; nu < best.size(); ++nu) {
      if (best[nu] == kNoTree) continue;
      out.push_back(TreeRecord{n, static_cast<int>(nu), best[nu], std::move(best_children[nu])});
    }
  }
  return TreeSet(m, std::move(by_size));
}

std::vector<TreeSummary> brute_force_trees(int m, int n) {
  if (!((m == 2 && n >= 1 && n <= 10) || (m == 4 && n >= 1 && n <= 7))) {
    throw std::invalid_argument("brute-force enumeration limited to M=2, N<=10 and M=4, N<=7");
  }
  std::vector<std::vector<TreeSummary>> memo(static_cast<std::size_t>(n) + 1);
  memo[1].push_back({0, 0, "."});

  for (int size = 2; size <= n; ++size) {
    auto& out = memo[static_cast<std::size_t>(size)];
    for (int parts = 2; parts <= std::min(m, size); ++parts) {
      // Every ordered composition of size into parts positive sizes.
      std::vector<int> sizes(static_cast<std::size_t>(parts), 1);
      std::function<void(int, int)> compose = [&](int j, int remaining) {
        if (j == parts - 1) {
          sizes[static_cast<std::size_t>(j)] = remaining;
          // Cartesian product of child trees.
          std::vector<std::size_t> pick(static_cast<std::size_t>(parts), 0);
          while (true) {
            TreeSummary t{size, 0, "("};
            for (int c = 0; c < parts; ++c) {
              const int s = sizes[static_cast<std::size_t>(c)];
              const auto& child = memo[static_cast<std::size_t>(s)][pick[static_cast<std::size_t>(c)]];
              t.sum_depth += child.sum_depth;
              t.sum_energy += child.sum_energy + static_cast<std::int64_t>(edge_energy(c + 1)) * s;
              t.shape += s == 1 ? std::to_string(2 * c + 1) : child.shape;
            }
            t.shape += ")";
            out.push_back(std::move(t));
            int c = parts - 1;
            while (c >= 0) {
              auto& p = pick[static_cast<std::size_t>(c)];
              if (++p < memo[static_cast<std::size_t>(sizes[static_cast<std::size_t>(c)])].size()) break;
              p = 0;
              --c;
            }
            if (c < 0) break;
          }
          return;
        }
        for (int s = 1; s <= remaining - (parts - 1 - j); ++s) {
          sizes[static_cast<std::size_t>(j)] = s;
          compose(j + 1, remaining - s);
        }
      };
      compose(0, size);
    }
  }
  return memo[static_cast<std::size_t>(n)];
}

TreeBounds tree_bounds(int m, int n) {
  if (n < 1) throw std::invalid_argument("tree size must be >= 1");
  if (m < 2) throw std::invalid_argument("alphabet size must be >= 2");
  long long power = 1;
  int depth = 0;
  while (power * m <= n) {
    power *= m;
    ++depth;
  }
  TreeBounds b{};
  b.nu_min_formula = static_cast<int>((n - power) * (depth + 1) + power * depth);
  b.nu_max = (n + 2) * (n - 1) / 2;
  return b;
}

namespace {

void collect_leaves(const TreeSet& set, const TreeRecord& tree, std::vector<Amplitude>& path,
                    std::vector<SymbolWord>& out) {
  if (tree.children.empty()) {
    out.emplace_back(path);
    return;
  }
  for (std::size_t j = 0; j < tree.children.size(); ++j) {
    const auto& ref = tree.children[j];
    path.push_back(static_cast<Amplitude>(2 * j + 1));
    collect_leaves(set, set.optimal(ref.size)[static_cast<std::size_t>(ref.index)], path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<SymbolWord> tree_to_codebook(const TreeSet& set, const TreeRecord& tree) {
  std::vector<SymbolWord> out;
  std::vector<Amplitude> path;
  collect_leaves(set, tree, path, out);
  return out;
}

std::string tree_shape(const TreeSet& set, const TreeRecord& tree) {
  if (tree.children.empty()) return ".";
  std::string s = "(";
  for (std::size_t j = 0; j < tree.children.size(); ++j) {
    const auto& ref = tree.children[j];
    s += ref.size == 1 ? std::to_string(2 * j + 1)
                       : tree_shape(set, set.optimal(ref.size)[static_cast<std::size_t>(ref.index)]);
  }
  return s + ")";
}

nlohmann::json tree_set_to_json(const TreeSet& set) {
  nlohmann::json sizes = nlohmann::json::array();
  for (int n = 1; n <= set.max_leaves(); ++n) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& r : set.optimal(n)) {
      trees.push_back({{"nu", r.sum_depth}, {"omega", r.sum_energy}, {"shape", tree_shape(set, r)}});
    }
    sizes.push_back({{"n", n}, {"trees", std::move(trees)}});
  }
  return {{"m", set.alphabet_size()}, {"sizes", std::move(sizes)}};
}

}  // namespace shapecode
