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

#include <span>
#include <vector>

#include "shapecode/code.hpp"

namespace shapecode {

/// Probability vector over an ordered support. Normalized unless a function
/// says otherwise.
using Pmf = std::vector<double>;

/// Entropy in bits with 0 log 0 = 0.
double entropy_bits(std::span<const double> p);

/// D(p || q) in bits. q need not sum to one; terms with p_n = 0 contribute 0.
double kl_divergence_bits(std::span<const double> p, std::span<const double> q);

/// Maxwell-Boltzmann distribution over the amplitudes of an ASK alphabet,
/// P(x) proportional to exp(-lambda |x|^2).
struct MbModel {
  AskAlphabet alphabet;
  double lambda = 0.0;
  Pmf pmf;
  double entropy = 0.0;      // bits
  double mean_energy = 0.0;  // E|X|^2
};

MbModel mb_scalar(const AskAlphabet& alphabet, double lambda);

/// Bisection bracket and iteration cap for lambda_for_rate.
inline constexpr double kLambdaUpper = 64.0;
inline constexpr int kLambdaIterations = 200;

/// lambda with H(X_MB(lambda)) == target_entropy to within 1e-10 bits.
/// Throws std::invalid_argument unless 0 < target_entropy <= log2 M.
double lambda_for_rate(const AskAlphabet& alphabet, double target_entropy);

/// Minimum mean energy E|X_MB|^2 of any distribution on the alphabet with
/// entropy equal to rate.
double mb_energy_at_rate(const AskAlphabet& alphabet, double rate);

/// P(x_n) proportional to exp(-lambda ||x_n||^2) over a codebook.
Pmf mb_codeword_pmf(std::span<const SymbolWord> codebook, double lambda);

/// 10 log10(energy / E|X_MB|^2) with X_MB at entropy == rate.
double energy_gap_db(double energy, double rate, const AskAlphabet& alphabet);

}  // namespace shapecode
