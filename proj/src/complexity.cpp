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

#include "mirrorqam/complexity.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "mirrorqam/errors.hpp"

namespace mirrorqam {

double cos_power_weight(int distance, int n, int b) {
    if (n < 1 || b < 0 || distance < 0 || distance > n) {
        throw DomainError("cos_power_weight needs 0 <= d <= n, n >= 1, b >= 0");
    }
    if (b == 0) {
        return 1.0;
    }
    if (distance == n) {
        return 0.0;
    }
    const double c = std::cos(std::numbers::pi * distance / (2.0 * n));
    return std::pow(c, 2 * b);
}

double complexity_estimate(const BitPattern &input, const PatternSet &patterns, int b) {
    double mass = 0.0;
    for (const auto &pattern : patterns) {
        mass += cos_power_weight(hamming_distance(input, pattern), patterns.n(), b);
    }
    if (mass == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std::sqrt(patterns.p() / mass);
}

double cos_power_average(int b) {
    if (b < 0) {
        throw DomainError("b must be nonnegative");
    }
    double avg = 1.0;
    for (int j = 1; j <= b; ++j) {
        avg *= (2.0 * j - 1.0) / (2.0 * j);
    }
    return avg;
}

double complexity_uniform_approx(int b) {
    if (b < 1) {
        throw DomainError("b must be at least 1");
    }
    return std::pow(std::numbers::pi * b, 0.25);
}

double complexity_uniform_exact(int b) { return std::sqrt(1.0 / cos_power_average(b)); }

double grover_baseline(int n) { return std::sqrt(std::ldexp(1.0, n)); }

} // namespace mirrorqam
