// Copyright 2026 The mirrorqam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "mirrorqam/patterns.hpp"

namespace mirrorqam {

/// cos^{2b}(pi d / 2n), with the d = n case pinned to exactly zero so that
/// zero-mass inputs are detected without rounding noise.
double cos_power_weight(int distance, int n, int b);

/// Number of amplification rounds the retrieval needs for this input:
/// sqrt(p / sum_k cos^{2b}(pi d_H(input, p^k) / 2n)). Returns +infinity for
/// a zero-mass input.
double complexity_estimate(const BitPattern &input, const PatternSet &patterns, int b);

/// (2/pi) * integral_0^{pi/2} cos^{2b}(x) dx = C(2b, b) / 4^b, evaluated as
/// the running product prod_{j=1..b} (2j - 1) / (2j).
double cos_power_average(int b);

/// Large-b estimate (pi b)^{1/4} of the round count when every cosine is
/// replaced by its average. Compare with grover_baseline(n) = sqrt(2^n) for
/// address-based retrieval: the estimate depends on neither n nor p.
double complexity_uniform_approx(int b);

/// sqrt(1 / cos_power_average(b)): the averaged round count before the
/// Stirling step.
double complexity_uniform_exact(int b);

double grover_baseline(int n);

} // namespace mirrorqam
