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

#include "shapecode/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shapecode/mbdist.hpp"

namespace shapecode {

SymbolRateModel symbol_rate_model(const PrefixFreeCode& code) {
  const CodeMetrics metrics = code_metrics(code);
  SymbolRateModel model;
  const auto entries = code.entries();
  double norm = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) norm += metrics.leaf_pmf[i] * entries[i].codeword.length();
  double second = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double r = static_cast<double>(entries[i].info.length()) / entries[i].codeword.length();
    const double q = metrics.leaf_pmf[i] * entries[i].codeword.length() / norm;
    model.rates.push_back(r);
    model.weights.push_back(q);
    model.mean += q * r;
    second += q * r * r;
  }
  model.variance = std::max(0.0, second - model.mean * model.mean);
  return model;
}

namespace {

constexpr double kDegenerateVariance = 1e-30;

double upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
double density(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// P(Theta <= x) for Theta ~ N(mu, var); a step at mu when var vanishes.
double cdf(double x, double mu, double var) {
  if (var <= kDegenerateVariance) return x >= mu ? 1.0 : 0.0;
  return std::clamp(upper_tail((mu - x) / std::sqrt(var)), 0.0, 1.0);
}

struct Moments {
  double mean;
  double variance;
};

// Moments of N(mu, var) conditioned on [a, b]. With no mass on [a, b] the
// mean is clamped into the interval and the variance is zero.
Moments truncated(double mu, double var, double a, double b) {
  if (var <= kDegenerateVariance) return {std::clamp(mu, a, b), 0.0};
  const double s = std::sqrt(var);
  const double za = (a - mu) / s, zb = (b - mu) / s;
  const double mass = za > 0.0 ? upper_tail(za) - upper_tail(zb) : upper_tail(-zb) - upper_tail(-za);
  if (!(mass > 1e-300)) return {std::clamp(mu, a, b), 0.0};
  const double pa = density(za), pb = density(zb);
  const double shift = (pa - pb) / mass;
  const double ta = std::isfinite(za) ? za * pa : 0.0, tb = std::isfinite(zb) ? zb * pb : 0.0;
  const double v = var * (1.0 + (ta - tb) / mass - shift * shift);
  return {mu + s * shift, std::max(0.0, v)};
}

}  // namespace

GaResult ga_analyze(const PrefixFreeCode& shaping, int k, int n) {
  const AskAlphabet& alphabet = shaping.alphabet();
  const int r2 = alphabet.bits_per_symbol();
  if (k < 1 || n < 1 || static_cast<long long>(k) >= static_cast<long long>(n) * r2) {
    throw std::invalid_argument("ga_analyze needs 1 <= k < n log2 M");
  }
  const SymbolRateModel model = symbol_rate_model(shaping);
  const int lmax = shaping.max_codeword_length();
  const int lmin = shaping.min_info_length();

  GaResult out;
  out.shaping_energy = code_metrics(shaping).energy;
  out.uniform_energy = alphabet.uniform_energy();
  out.trace.reserve(static_cast<std::size_t>(n));

  auto xi = [&](int t) { return static_cast<double>(r2) * (t - n - 1 + lmax) + k - lmin; };

  double mu = 0.0, var = 0.0, cum_switch = 0.0, cum_end = 0.0;
  double energy_sum = 0.0;
  for (int t = 1; t <= n; ++t) {
    const double alive = std::max(0.0, 1.0 - cum_switch - cum_end);
    const double threshold = xi(t);
    // Mass above k already counts as terminated, so the switch test stops at k.
    const double phi_switch = alive * cdf(std::min(threshold, static_cast<double>(k)), mu, var);
    const double phi_end = alive * (1.0 - cdf(k, mu, var));
    const double prev_end = cum_end;
    cum_switch += phi_switch;
    cum_end += phi_end;

    const Moments m = truncated(mu, var, xi(t - 1), k);
    mu = m.mean + model.mean;
    var = m.variance + model.variance;

    energy_sum += (1.0 - cum_switch - prev_end) * out.shaping_energy + cum_switch * out.uniform_energy + prev_end;
    out.trace.push_back({t, threshold, mu, var, phi_switch, phi_end, cum_switch, cum_end});
  }
  out.frame_energy = energy_sum / n;
  out.gap_db = energy_gap_db(out.frame_energy, static_cast<double>(k) / n, alphabet);
  return out;
}

}  // namespace shapecode
