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

#include "mirrorqam/memory.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "mirrorqam/errors.hpp"

namespace mirrorqam {

namespace {

constexpr double kEfficiencySumTolerance = 1e-12;

void check_memory_width(const PatternSet &patterns, const RegisterLayout &layout) {
    if (layout.memory_width() != patterns.n()) {
        throw DimensionError("memory register has " + std::to_string(layout.memory_width()) +
                             " qubits but patterns have length " + std::to_string(patterns.n()));
    }
}

StateVector uniform_superposition(const PatternSet &patterns, const RegisterLayout &layout,
                                  Representation representation, bool mirrored) {
    check_memory_width(patterns, layout);
    const double amp = 1.0 / std::sqrt(static_cast<double>(patterns.p()));
    std::vector<BasisAmplitude> terms;
    terms.reserve(static_cast<std::size_t>(patterns.p()));
    for (const auto &pattern : patterns) {
        const auto bits = mirrored ? mirror(pattern) : pattern;
        terms.push_back({layout.place(Register::Memory, bits.to_mask()), Amplitude{amp, 0.0}});
    }
    return StateVector::from_amplitudes(layout, std::move(terms), representation);
}

} // namespace

StateVector build_memory_state(const PatternSet &patterns, const RegisterLayout &layout,
                               Representation representation) {
    return uniform_superposition(patterns, layout, representation, false);
}

StateVector build_mirror_state(const PatternSet &patterns, const RegisterLayout &layout,
                               Representation representation) {
    return uniform_superposition(patterns, layout, representation, true);
}

double memory_overlap(const PatternSet &patterns) {
    std::set<BitPattern> stored(patterns.begin(), patterns.end());
    int paired = 0;
    for (const auto &pattern : patterns) {
        paired += stored.count(mirror(pattern)) > 0 ? 1 : 0;
    }
    return static_cast<double>(paired) / patterns.p();
}

CloningSolution solve_efficiencies(double overlap) {
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw DomainError("overlap must lie in [0, 1], got " + std::to_string(overlap));
    }
    if (overlap == 0.0) {
        throw SingularOverlapError("overlap <M|Mbar> = 0: sqrt(gamma gamma_bar) = 1/(2s) is undefined");
    }
    CloningSolution sol;
    sol.overlap = overlap;
    sol.discriminant = 1.0 - 1.0 / (overlap * overlap);
    if (sol.discriminant < 0.0) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "no real efficiencies: gamma(1-gamma) = 1/(4s^2) = " << 0.25 / (overlap * overlap)
            << " exceeds the maximum 1/4 of gamma(1-gamma); discriminant 1 - 1/s^2 = " << sol.discriminant
            << " < 0";
        sol.diagnostic = msg.str();
        return sol;
    }
    const double root = std::sqrt(sol.discriminant);
    sol.gamma = 0.5 * (1.0 + root);
    sol.gamma_bar = 0.5 * (1.0 - root);
    sol.feasible = true;
    sol.diagnostic = "feasible";
    return sol;
}

GramCheck gram_condition_check(double overlap, double gamma, double gamma_bar) {
    if (gamma < 0.0 || gamma_bar < 0.0) {
        throw DomainError("efficiencies must be nonnegative");
    }
    const double s = overlap;
    const double diag = gamma + gamma_bar;
    const double off = std::sqrt(gamma * gamma_bar) * (s + s) * s;
    GramCheck check;
    check.input = {{{1.0, s}, {s, 1.0}}};
    check.output = {{{diag, off}, {off, diag}}};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            check.residual[i][j] = check.output[i][j] - check.input[i][j];
            check.max_residual = std::max(check.max_residual, std::abs(check.residual[i][j]));
        }
    }
    check.equal = check.max_residual <= kGramTolerance;
    return check;
}

GramCheck gram_condition_check(const PatternSet &patterns, double gamma, double gamma_bar) {
    return gram_condition_check(memory_overlap(patterns), gamma, gamma_bar);
}

CloneResult apply_clone(CloneSource source, const PatternSet &patterns, double gamma, double gamma_bar,
                        const RegisterLayout &layout, Representation representation) {
    if (gamma < 0.0 || gamma_bar < 0.0 || std::abs(gamma + gamma_bar - 1.0) > kEfficiencySumTolerance) {
        throw DomainError("cloning efficiencies must be nonnegative and sum to 1");
    }
    check_memory_width(patterns, layout);
    if (!layout.has(Register::Clone) || !layout.has(Register::Ancilla)) {
        throw DimensionError("cloning needs a layout with clone and ancilla registers");
    }
    const PatternSet mirrored = mirror_set(patterns);
    const bool from_memory = source == CloneSource::Memory;
    const PatternSet &kept = from_memory ? patterns : mirrored;
    const PatternSet &other = from_memory ? mirrored : patterns;
    // Weight of the "same copy" branch (ancilla 0) and the "mirrored copy"
    // branch (ancilla 1).
    const double same = std::sqrt(from_memory ? gamma : gamma_bar);
    const double flipped = std::sqrt(from_memory ? gamma_bar : gamma);
    const double pair_amp = 1.0 / patterns.p();
    const BasisIndex anc1 = layout.place(Register::Ancilla, 1);

    std::vector<BasisAmplitude> terms;
    for (const auto &a : kept) {
        const BasisIndex mem = layout.place(Register::Memory, a.to_mask());
        for (int j = 0; j < patterns.p(); ++j) {
            if (same > 0.0) {
                terms.push_back({mem | layout.place(Register::Clone, kept[j].to_mask()), same * pair_amp});
            }
            if (flipped > 0.0) {
                terms.push_back({mem | layout.place(Register::Clone, other[j].to_mask()) | anc1, flipped * pair_amp});
            }
        }
    }
    double norm_sq = 0.0;
    // Terms are distinct basis states: memory and clone patterns are distinct
    // within a set, and the ancilla separates the two branches.
    for (const auto &t : terms) {
        norm_sq += std::norm(t.amplitude);
    }
    const double norm = std::sqrt(norm_sq);
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw DomainError("cloned superposition has norm " + std::to_string(norm) + "; refusing to renormalize");
    }
    return {StateVector::from_amplitudes(layout, std::move(terms), representation), norm};
}

} // namespace mirrorqam
