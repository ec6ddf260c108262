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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mirrorqam/patterns.hpp"
#include "mirrorqam/statevector.hpp"

// Test-only oracles. These recompute expected values straight from the
// closed-form expressions, without going through the library's own helpers.
namespace mirrorqam::testing {

inline int brute_hamming(const std::string &a, const std::string &b) {
    int d = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        d += a[j] != b[j] ? 1 : 0;
    }
    return d;
}

/// cos^{2b}(pi d / 2n) with no special casing; callers compare with an
/// absolute tolerance, so the d = n rounding residue (~1e-33) is harmless.
inline double oracle_weight(int d, int n, int b) {
    return std::pow(std::cos(std::numbers::pi * d / (2.0 * n)), 2.0 * b);
}

/// Amplitude of the restored state on (memory = pattern, controls = J,
/// ancilla = branch) from the closed form
///   sqrt(g/p) cos^{b-l}(x) (i sin x)^l,  x = pi d / 2n,
/// where d is d_H(input, p^k) on branch 0 and n - d_H on branch 1.
inline std::complex<double> oracle_restored_amplitude(int d, int n, int b, int ones, double weight, int p) {
    const double x = std::numbers::pi * d / (2.0 * n);
    std::complex<double> amp = std::sqrt(weight / p) * std::pow(std::cos(x), b - ones);
    for (int l = 0; l < ones; ++l) {
        amp *= std::complex<double>(0.0, std::sin(x));
    }
    return amp;
}

inline std::mt19937_64 &test_rng() {
    static std::mt19937_64 rng(0x5eed1234ULL);
    return rng;
}

inline std::vector<BasisAmplitude> random_amplitudes(int qubits, int support, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<std::uint64_t> index(0, (std::uint64_t{1} << qubits) - 1);
    std::vector<BasisAmplitude> terms;
    double norm_sq = 0.0;
    for (int i = 0; i < support; ++i) {
        std::complex<double> a(normal(rng), normal(rng));
        terms.push_back({index(rng), a});
    }
    // Repeated indices are merged by from_amplitudes; normalize the merged sum.
    std::vector<std::complex<double>> merged(std::size_t{1} << qubits);
    for (const auto &t : terms) {
        merged[t.index] += t.amplitude;
    }
    for (auto a : merged) {
        norm_sq += std::norm(a);
    }
    for (auto &t : terms) {
        t.amplitude /= std::sqrt(norm_sq);
    }
    return terms;
}

inline StateVector random_state(const RegisterLayout &layout, int support, std::mt19937_64 &rng,
                                Representation representation = Representation::Sparse) {
    return StateVector::from_amplitudes(layout, random_amplitudes(layout.num_qubits(), support, rng), representation);
}

} // namespace mirrorqam::testing
