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

#include <vector>

#include "shapecode/code.hpp"

namespace shapecode {

/// Rate seen at a random output symbol of an unframed C1 stream.
struct SymbolRateModel {
  std::vector<double> rates;    // r_n = l(b_n) / l(x_n)
  std::vector<double> weights;  // q_n = p_n l(x_n) / sum_i p_i l(x_i)
  double mean = 0.0;            // equals R_C1
  double variance = 0.0;        // S^2
};

SymbolRateModel symbol_rate_model(const PrefixFreeCode& code);

struct GaPoint {
  int t;
  double xi;        // overflow threshold at t
  double mu;        // mean of the cumulative bit count after symbol t
  double variance;
  double phi_switch;
  double phi_end;
  double cum_switch;
  double cum_end;
};

struct GaResult {
  std::vector<GaPoint> trace;  // t = 1..n
  double frame_energy = 0.0;
  double gap_db = 0.0;         // against the MB energy at k / n
  double shaping_energy = 0.0; // E_C1
  double uniform_energy = 0.0; // E_C2
};

/// Gaussian approximation of framing C1 (plus the uniform code) into
/// k bits per n symbols. Requires 1 <= k < n log2 M.
GaResult ga_analyze(const PrefixFreeCode& shaping, int k, int n);

}  // namespace shapecode
