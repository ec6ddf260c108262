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

#include <array>
#include <string>

#include "mirrorqam/patterns.hpp"
#include "mirrorqam/statevector.hpp"

namespace mirrorqam {

/// Uniform superposition of the stored patterns on the memory register; every
/// other register is |0...0>. Throws DimensionError if the memory width is
/// not the pattern length.
StateVector build_memory_state(const PatternSet &patterns, const RegisterLayout &layout,
                               Representation representation = Representation::Sparse);

/// Same as build_memory_state over the bitwise-complemented patterns.
StateVector build_mirror_state(const PatternSet &patterns, const RegisterLayout &layout,
                               Representation representation = Representation::Sparse);

/// <M|Mbar>: the fraction of stored patterns whose complement is also stored.
/// Always real and in [0, 1].
double memory_overlap(const PatternSet &patterns);

/**
 * Efficiencies of the mirror-modular cloning map.
 *
 * The map exists iff gamma + gamma_bar = 1 and sqrt(gamma * gamma_bar) =
 * 1 / (2s), i.e. gamma solves gamma^2 - gamma + 1/(4 s^2) = 0. The
 * discriminant 1 - 1/s^2 is nonnegative on [0, 1] only at s = 1, so only
 * complement-closed memories are feasible, with gamma = gamma_bar = 1/2.
 */
struct CloningSolution {
    double overlap = 0.0;
    double discriminant = 0.0;
    /// Larger and smaller root when feasible; zero otherwise.
    double gamma = 0.0;
    double gamma_bar = 0.0;
    bool feasible = false;
    std::string diagnostic;
};

/// Infeasibility is returned as a value. Throws SingularOverlapError at s = 0
/// and DomainError outside [0, 1].
CloningSolution solve_efficiencies(double overlap);

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Input and output Gram matrices of the cloning map, entry by entry.
struct GramCheck {
    Matrix2 input{};
    Matrix2 output{};
    /// output - input
    Matrix2 residual{};
    double max_residual = 0.0;
    bool equal = false;
};

inline constexpr double kGramTolerance = 1e-10;

/// input  = [[1, s], [s, 1]]
/// output = [[g + gb, sqrt(g gb)(2s) s], [sqrt(g gb)(2s) s, g + gb]]
/// `equal` iff every residual entry is within kGramTolerance.
GramCheck gram_condition_check(double overlap, double gamma, double gamma_bar);
GramCheck gram_condition_check(const PatternSet &patterns, double gamma, double gamma_bar);

enum class CloneSource { Memory, Mirror };

struct CloneResult {
    StateVector state;
    /// Norm of the constructed superposition before any check.
    double norm = 0.0;
};

/**
 * Writes the cloning map's image of |M>|0>|0> (or |Mbar>|0>|0>):
 *
 *   M    -> sqrt(g)  |M>|M>|0>       + sqrt(gb) |M>|Mbar>|1>
 *   Mbar -> sqrt(gb) |Mbar>|Mbar>|0> + sqrt(g)  |Mbar>|M>|1>
 *
 * over the memory, clone and ancilla registers. The construction is defined
 * for any efficiencies summing to one, feasible or not. The norm is measured
 * and reported; a state whose norm is off by more than kNormTolerance is
 * rejected rather than rescaled.
 */
CloneResult apply_clone(CloneSource source, const PatternSet &patterns, double gamma, double gamma_bar,
                        const RegisterLayout &layout, Representation representation = Representation::Sparse);

} // namespace mirrorqam
