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

#include "shapecode/mbdist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace shapecode {

double entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double kl_divergence_bits(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence_bits: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

MbModel mb_scalar(const AskAlphabet& alphabet, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("MB rate parameter must be >= 0");
  MbModel model{alphabet, lambda, {}, 0.0, 0.0};
  model.pmf.resize(static_cast<std::size_t>(alphabet.size()));
  // Energies are shifted by the smallest one (1) to keep exp() in range.
  double z = 0.0;
  for (int i = 0; i < alphabet.size(); ++i) {
    const double w = std::exp(-lambda * (alphabet.energy(i) - 1));
    model.pmf[static_cast<std::size_t>(i)] = w;
    z += w;
  }
  for (int i = 0; i < alphabet.size(); ++i) {
    auto& p = model.pmf[static_cast<std::size_t>(i)];
    p /= z;
    model.mean_energy += p * alphabet.energy(i);
  }
  model.entropy = entropy_bits(model.pmf);
  return model;
}

double lambda_for_rate(const AskAlphabet& alphabet, double target_entropy) {
  const double max_entropy = std::log2(static_cast<double>(alphabet.size()));
  if (!(target_entropy > 0.0) || target_entropy > max_entropy + 1e-12) {
    throw std::invalid_argument("target entropy " + std::to_string(target_entropy) + " outside (0, log2 M]");
  }
  if (target_entropy >= max_entropy - 1e-15) return 0.0;

  // Entropy is strictly decreasing in lambda.
  double lo = 0.0;
  double hi = kLambdaUpper;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kLambdaIterations; ++it) {
    mid = 0.5 * (lo + hi);
    const double h = mb_scalar(alphabet, mid).entropy;
    if (std::abs(h - target_entropy) <= 1e-13) break;
    if (h > target_entropy) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  const double h = mb_scalar(alphabet, mid).entropy;
  if (std::abs(h - target_entropy) > 1e-10) {
    throw std::runtime_error("lambda bisection did not reach entropy " + std::to_string(target_entropy));
  }
  return mid;
}

double mb_energy_at_rate(const AskAlphabet& alphabet, double rate) {
  return mb_scalar(alphabet, lambda_for_rate(alphabet, rate)).mean_energy;
}

Pmf mb_codeword_pmf(std::span<const SymbolWord> codebook, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("MB rate parameter must be >= 0");
  if (codebook.empty()) throw std::invalid_argument("codebook is empty");
  std::int64_t min_energy = codebook.front().energy();
  for (const auto& x : codebook) min_energy = std::min(min_energy, x.energy());
  Pmf p(codebook.size());
  double z = 0.0;
  for (std::size_t i = 0; i < codebook.size(); ++i) {
    p[i] = std::exp(-lambda * static_cast<double>(codebook[i].energy() - min_energy));
    z += p[i];
  }
  for (double& x : p) x /= z;
  return p;
}

double energy_gap_db(double energy, double rate, const AskAlphabet& alphabet) {
  if (!(energy > 0.0)) throw std::invalid_argument("energy must be positive");
  return 10.0 * std::log10(energy / mb_energy_at_rate(alphabet, rate));
}

}  // namespace shapecode
