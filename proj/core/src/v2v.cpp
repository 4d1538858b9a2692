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

#include "shapecode/v2v.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>

#include "shapecode/ghc.hpp"
#include "shapecode/parallel.hpp"
#include "shapecode/trees.hpp"
#include "shapecode/v2f.hpp"

namespace shapecode {

RateConstraint rate_constraint(std::span<const int> codeword_lengths, double rate) {
  RateConstraint rc;
  rc.q.reserve(codeword_lengths.size());
  for (int l : codeword_lengths) {
    const double q = std::exp2(-rate * l);
    rc.q.push_back(q);
    rc.total += q;
  }
  return rc;
}

namespace {

// Gibbs member p ∝ q exp(-b c) for shifted costs c >= 0.
struct Tilt {
  double divergence_bits;
  double variance;
};

Tilt tilt(std::span<const double> c, std::span<const double> q, double b, std::vector<double>& w) {
  double z = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    w[i] = q[i] * std::exp(-b * c[i]);
    z += w[i];
    mean += w[i] * c[i];
  }
  mean /= z;
  double var = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) var += w[i] * (c[i] - mean) * (c[i] - mean);
  var /= z;
  return {(-b * mean - std::log(z)) / std::numbers::ln2, var};
}

}  // namespace

Pmf solve_inner(std::span<const double> costs, const RateConstraint& q) {
  const std::size_t n = costs.size();
  if (n == 0 || q.q.size() != n) throw std::invalid_argument("solve_inner: size mismatch");
  if (!q.feasible()) throw InfeasibleRate("tree cannot achieve the target rate (sum q < 1)");

  const double cmin = *std::min_element(costs.begin(), costs.end());
  std::vector<double> c(n);
  double argmin_mass = 0.0, spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = costs[i] - cmin;
    if (c[i] == 0.0) argmin_mass += q.q[i];
    spread = std::max(spread, c[i]);
  }

  Pmf p(n, 0.0);
  // The limit beta -> inf is feasible: restrict q to the argmin set.
  if (argmin_mass >= 1.0 || spread == 0.0) {
    for (std::size_t i = 0; i < n; ++i) p[i] = c[i] == 0.0 ? q.q[i] / argmin_mass : 0.0;
    return p;
  }
  // Q == 1 leaves only p = q.
  if (std::log2(q.total) <= kDivergenceTolerance) {
    for (std::size_t i = 0; i < n; ++i) p[i] = q.q[i] / q.total;
    return p;
  }

  // D(0) = -log2 Q < 0 and D(inf) = -log2 Q_argmin > 0; D is increasing in b.
  std::vector<double> w(n);
  double lo = 0.0, hi = 1.0 / spread;
  Tilt at_hi = tilt(c, q.q, hi, w);
  for (int k = 0; at_hi.divergence_bits <= 0.0; ++k) {
    if (k > 2000) throw std::runtime_error("solve_inner: cannot bracket the divergence root");
    lo = hi;
    hi *= 2.0;
    at_hi = tilt(c, q.q, hi, w);
  }

  // Newton polishes past the acceptance tolerance so that outer energies
  // are not perturbed by root noise.
  auto finish = [&](double beta) {
    tilt(c, q.q, beta, w);
    double z = 0.0;
    for (double x : w) z += x;
    for (std::size_t i = 0; i < n; ++i) p[i] = w[i] / z;
    return p;
  };
  double b = 0.5 * (lo + hi);
  double best_b = b, best_abs = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kInnerIterationCap; ++it) {
    const Tilt t = tilt(c, q.q, b, w);
    if (std::abs(t.divergence_bits) < best_abs) {
      best_abs = std::abs(t.divergence_bits);
      best_b = b;
    }
    if (best_abs <= kDivergencePolish || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) break;
    if (t.divergence_bits < 0.0) lo = b; else hi = b;
    // dD/db = b Var / ln2 in bits.
    const double slope = b * t.variance / std::numbers::ln2;
    double next = slope > 0.0 ? b - t.divergence_bits / slope : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    b = next;
  }
  if (best_abs > kDivergenceTolerance) {
    throw std::runtime_error("solve_inner: divergence root not located within the iteration cap");
  }
  return finish(best_b);
}

OptimalPmf optimal_pmf(std::span<const int> lengths, std::span<const std::int64_t> energies, double rate, double eps) {
  const std::size_t n = lengths.size();
  if (energies.size() != n || n == 0) throw std::invalid_argument("optimal_pmf: size mismatch");
  const RateConstraint rc = rate_constraint(lengths, rate);
  if (!rc.feasible()) throw InfeasibleRate("tree cannot achieve the target rate (sum q < 1)");

  auto ratio = [&](const Pmf& p) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += p[i] * static_cast<double>(energies[i]);
      den += p[i] * lengths[i];
    }
    return num / den;
  };

  OptimalPmf out;
  out.pmf.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.pmf[i] = rc.q[i] / rc.total;
  out.energy = ratio(out.pmf);
  out.energies.push_back(out.energy);

  std::vector<double> costs(n);
  for (int it = 1; it <= kOuterIterationCap; ++it) {
    for (std::size_t i = 0; i < n; ++i) costs[i] = static_cast<double>(energies[i]) - out.energy * lengths[i];
    Pmf next = solve_inner(costs, rc);
    const double e = ratio(next);
    out.energies.push_back(e);
    out.iterations = it;
    if (e > out.energy + 1e-12) out.monotone = false;
    const double decrease = out.energy - e;
    out.pmf = std::move(next);
    out.energy = e;
    if (decrease < eps) break;
  }
  return out;
}

OptimalPmf optimal_pmf(std::span<const SymbolWord> codebook, double rate, double eps) {
  std::vector<int> lengths;
  std::vector<std::int64_t> energies;
  for (const auto& w : codebook) {
    lengths.push_back(w.length());
    energies.push_back(w.energy());
  }
  return optimal_pmf(lengths, energies, rate, eps);
}

namespace {

struct RightTree {
  int leaves;
  int sum_depth;
  std::vector<SymbolWord> codebook;
  std::vector<int> lengths;
  std::vector<std::int64_t> energies;
};

struct Candidate {
  double energy;
  int leaves;
  int sum_depth;
  std::size_t tree;
  DyadicPmf dyadic;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.energy != b.energy) return a.energy < b.energy;
  if (a.leaves != b.leaves) return a.leaves < b.leaves;
  if (a.sum_depth != b.sum_depth) return a.sum_depth < b.sum_depth;
  return a.tree < b.tree;
}

int tree_cap(int m) { return m == 2 ? 64 : 32; }

void require_tree_alphabet(int m) {
  if (m != 2 && m != 4) throw std::invalid_argument("right-tree builders accept M in {2, 4}, got " + std::to_string(m));
}

}  // namespace

V2vLibrary build_v2v(const V2vOptions& options) {
  require_tree_alphabet(options.m);
  if (options.n_max < 2 || options.n_max > 32) throw std::invalid_argument("V2V needs 2 <= n_max <= 32");
  if (!(options.rate_step > 0.0) || !(options.delta > 0.0)) throw std::invalid_argument("rate step and delta must be positive");

  const AskAlphabet alphabet(options.m);
  const double max_rate = alphabet.bits_per_symbol();
  const int grid_size = std::max(1, static_cast<int>(std::lround(max_rate / options.rate_step)));
  std::vector<double> rates;
  for (int j = 1; j <= grid_size; ++j) rates.push_back(max_rate * j / grid_size);

  const TreeSet set = enumerate_optimal_trees(options.m, options.n_max);
  std::vector<RightTree> trees;
  for (int n = 2; n <= options.n_max; ++n) {
    for (const auto& rec : set.optimal(n)) {
      RightTree t{n, rec.sum_depth, tree_to_codebook(set, rec), {}, {}};
      for (const auto& w : t.codebook) {
        t.lengths.push_back(w.length());
        t.energies.push_back(w.energy());
      }
      trees.push_back(std::move(t));
    }
  }

  std::vector<std::optional<Candidate>> best(rates.size());
  V2vLibrary out;
  std::mutex mu;

  parallel_for(trees.size(), [&](std::size_t ti) {
    const RightTree& tree = trees[ti];
    SolverStats local;
    std::vector<std::pair<std::size_t, Candidate>> found;
    for (std::size_t j = 0; j < rates.size(); ++j) {
      // sum q decreases in the rate, so the first infeasible rate ends the tree.
      if (!rate_constraint(tree.lengths, rates[j]).feasible()) break;
      const OptimalPmf opt = optimal_pmf(tree.lengths, tree.energies, rates[j]);
      ++local.solves;
      if (opt.iterations <= 10) ++local.within_ten;
      if (!opt.monotone) ++local.nonmonotone;
      local.max_iterations = std::max(local.max_iterations, opt.iterations);

      DyadicPmf dyadic = ghc_dyadic(opt.pmf);
      if (dyadic.survivors() < 2) continue;
      std::vector<int> info, lens;
      std::vector<std::int64_t> energy;
      for (std::size_t i = 0; i < dyadic.size(); ++i) {
        if (dyadic.pruned(i)) continue;
        info.push_back(dyadic.lengths[i]);
        lens.push_back(tree.lengths[i]);
        energy.push_back(tree.energies[i]);
      }
      const CodeMetrics m = metrics_from_lengths(info, lens, energy);
      // A pair built for one grid rate competes at every grid rate within delta.
      const long nearest = std::lround(m.rate * grid_size / max_rate) - 1;
      for (long g = nearest - 1; g <= nearest + 1; ++g) {
        if (g < 0 || g >= static_cast<long>(rates.size())) continue;
        if (std::abs(m.rate - rates[static_cast<std::size_t>(g)]) >= options.delta) continue;
        found.emplace_back(static_cast<std::size_t>(g), Candidate{m.energy, tree.leaves, tree.sum_depth, ti, dyadic});
      }
    }

    std::lock_guard lock(mu);
    out.stats.solves += local.solves;
    out.stats.within_ten += local.within_ten;
    out.stats.nonmonotone += local.nonmonotone;
    out.stats.max_iterations = std::max(out.stats.max_iterations, local.max_iterations);
    for (auto& [j, cand] : found) {
      if (!best[j] || better(cand, *best[j])) best[j] = std::move(cand);
    }
  });

  out.library.resize(rates.size());
  for (std::size_t j = 0; j < rates.size(); ++j) {
    out.library[j].target = rates[j];
    if (!best[j]) continue;
    const RightTree& tree = trees[best[j]->tree];
    BuiltCode built{code_from_dyadic(alphabet, CodeKind::V2V, tree.codebook, best[j]->dyadic), {}, 0.0,
                    tree.leaves, tree.sum_depth};
    built.metrics = code_metrics(built.code);
    built.gap_db = energy_gap_db(built.metrics.energy, built.metrics.rate, alphabet);
    out.library[j].code = std::move(built);
  }
  return out;
}

BuiltCode build_f2v(int m, int u, double target_rate) {
  require_tree_alphabet(m);
  if (u < 1 || (1 << std::min(u, 30)) > tree_cap(m)) {
    throw std::invalid_argument("F2V needs 1 <= u and 2^u <= " + std::to_string(tree_cap(m)) + " for M = " +
                                std::to_string(m));
  }
  const AskAlphabet alphabet(m);
  if (!(target_rate > 0.0) || target_rate > alphabet.bits_per_symbol() + 1e-12) {
    throw std::invalid_argument("F2V target rate must lie in (0, log2 M]");
  }
  const int n = 1 << u;
  const TreeSet set = enumerate_optimal_trees(m, n);

  const TreeRecord* chosen = nullptr;
  double chosen_rate = 0.0;
  for (const auto& rec : set.optimal(n)) {
    const double r = static_cast<double>(n) * u / rec.sum_depth;
    const double d = std::abs(r - target_rate), dc = std::abs(chosen_rate - target_rate);
    if (!chosen || d < dc || (d == dc && r > chosen_rate)) {
      chosen = &rec;
      chosen_rate = r;
    }
  }
  if (!chosen) throw std::invalid_argument("no right tree with " + std::to_string(n) + " leaves");

  auto codebook = tree_to_codebook(set, *chosen);
  std::stable_sort(codebook.begin(), codebook.end(),
                   [](const SymbolWord& a, const SymbolWord& b) { return a.energy() < b.energy(); });
  std::vector<CodeEntry> entries;
  for (int i = 0; i < n; ++i) {
    std::string bits(static_cast<std::size_t>(u), '0');
    for (int b = 0; b < u; ++b) bits[static_cast<std::size_t>(u - 1 - b)] = ((i >> b) & 1) ? '1' : '0';
    entries.push_back({BitWord(std::move(bits)), codebook[static_cast<std::size_t>(i)]});
  }
  BuiltCode built{PrefixFreeCode::checked(alphabet, CodeKind::F2V, std::move(entries)), {}, 0.0, u, chosen->sum_depth};
  built.metrics = code_metrics(built.code);
  built.gap_db = energy_gap_db(built.metrics.energy, built.metrics.rate, alphabet);
  return built;
}

}  // namespace shapecode
