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
#include <span>
#include <stdexcept>
#include <vector>

#include "shapecode/code.hpp"
#include "shapecode/library.hpp"
#include "shapecode/mbdist.hpp"

namespace shapecode {

/// q_n = 2^(-R * l(x_n)). A right tree can reach rate R iff total >= 1.
struct RateConstraint {
  std::vector<double> q;
  double total = 0.0;

  bool feasible() const { return total >= 1.0; }
};

RateConstraint rate_constraint(std::span<const int> codeword_lengths, double rate);

/// Thrown when a right tree cannot reach the requested rate.
class InfeasibleRate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kDivergenceTolerance = 1e-11;
inline constexpr double kDivergencePolish = 1e-14;
inline constexpr int kInnerIterationCap = 300;

/// argmin sum p_n c_n over PMFs with D(p || q) <= 0. The minimizer lies in
/// the family p ∝ q 2^(-beta c); beta is found by safeguarded Newton inside
/// a bisection bracket. Throws InfeasibleRate when sum q < 1 and
/// std::runtime_error when the root is not located within the cap.
Pmf solve_inner(std::span<const double> costs, const RateConstraint& q);

struct OptimalPmf {
  Pmf pmf;
  double energy = 0.0;          // E* of the relaxed problem
  int iterations = 0;           // outer iterations until the decrease fell below eps
  bool monotone = true;         // E^(l) <= E^(l-1) + 1e-12 at every step
  std::vector<double> energies; // E^(0), E^(1), ...
};

inline constexpr double kOuterTolerance = 1e-10;
inline constexpr int kOuterIterationCap = 100;

/// Minimizes E(p) = sum p e / sum p l subject to D(p || q) <= 0, starting at
/// q / Q. Throws InfeasibleRate when the tree cannot reach rate.
OptimalPmf optimal_pmf(std::span<const int> codeword_lengths, std::span<const std::int64_t> codeword_energies,
                       double rate, double eps = kOuterTolerance);

OptimalPmf optimal_pmf(std::span<const SymbolWord> codebook, double rate, double eps = kOuterTolerance);

struct V2vOptions {
  int m = 2;
  int n_max = 16;
  double rate_step = 0.005;
  double delta = 0.0025;
};

struct SolverStats {
  std::size_t solves = 0;
  std::size_t within_ten = 0;     // solves that stopped after <= 10 outer iterations
  std::size_t nonmonotone = 0;
  int max_iterations = 0;
};

struct V2vLibrary {
  CodeLibrary library;
  SolverStats stats;
};

/// Rates j * log2(M) / J for j = 1..J, J = round(log2(M) / rate_step). For
/// each rate and each optimal right tree with 2 <= N <= n_max the relaxed
/// optimum is quantized by GHC. Every resulting pair is a candidate for all
/// grid rates R* with |R_C - R*| < delta; per rate the lowest realized E_C
/// wins, ties to smaller N and then smaller sum depth.
V2vLibrary build_v2v(const V2vOptions& options);

/// Fixed-length dictionary of all u-bit words over the optimal right tree
/// with 2^u leaves whose rate 2^u u / nu is nearest target_rate, ties toward
/// the higher rate. Throws when 2^u exceeds the tree cap for M.
BuiltCode build_f2v(int m, int u, double target_rate);

}  // namespace shapecode
