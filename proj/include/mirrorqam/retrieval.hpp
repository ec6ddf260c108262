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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mirrorqam/memory.hpp"
#include "mirrorqam/patterns.hpp"
#include "mirrorqam/statevector.hpp"

namespace mirrorqam {

/// Where the branch weights (gamma, gamma_bar) of the initial state come from.
struct GammaMode {
    enum class Kind {
        /// gamma = 1: only the memory branch, usable on any pattern set.
        MemoryOnly,
        /// Solve the cloning efficiencies; fails unless the set is
        /// complement-closed.
        FromCloning,
        /// gamma as given, gamma_bar = 1 - gamma.
        Fixed,
    };
    Kind kind = Kind::MemoryOnly;
    double gamma = 1.0;

    static GammaMode memory_only() { return {Kind::MemoryOnly, 1.0}; }
    static GammaMode from_cloning() { return {Kind::FromCloning, 0.0}; }
    static GammaMode fixed(double gamma) { return {Kind::Fixed, gamma}; }
};

/// How many amplification rounds to run after the ancilla is measured.
struct AmplificationMode {
    enum class Kind {
        /// Read P_good off the simulated state and use the floor schedule.
        Exact,
        /// Derive the round count from (pi b)^{1/4}, varying it by
        /// 0, +1, -1, +2, -2 on successive attempts.
        Estimate,
        /// Always `rounds`.
        Fixed,
    };
    Kind kind = Kind::Exact;
    int rounds = 0;

    static AmplificationMode exact() { return {Kind::Exact, 0}; }
    static AmplificationMode estimate() { return {Kind::Estimate, 0}; }
    static AmplificationMode fixed(int k) { return {Kind::Fixed, k}; }
};

struct RetrievalConfig {
    int b = 1;
    GammaMode gamma_mode = GammaMode::memory_only();
    AmplificationMode amplification = AmplificationMode::exact();
    long shots = 1;
    std::uint64_t seed = 0;
    Representation representation = Representation::Sparse;
    /// Extra attempts after a failed round (controls measured outside the
    /// good subspace).
    int retry_budget = 0;
    /// Simulate the input register instead of holding it classically.
    bool quantum_input = false;

    /// Throws DomainError on b < 1, shots < 1, gamma outside [0, 1],
    /// negative rounds or retry budget.
    void validate() const;
};

struct Efficiencies {
    double gamma = 1.0;
    double gamma_bar = 0.0;
};

/// Throws InfeasibleCloningError for FromCloning on a set whose efficiency
/// condition has no real solution (including zero overlap).
Efficiencies resolve_efficiencies(const GammaMode &mode, const PatternSet &patterns);

// ---------------------------------------------------------------------------
// Pipeline steps

/// sqrt(g)|I>|M>|0..0>|0> + sqrt(gb)|I>|Mbar>|0..0>|1>. The input register
/// is only written when the layout simulates it.
StateVector prepare_initial(const BitPattern &input, const PatternSet &patterns, double gamma, double gamma_bar,
                            const RegisterLayout &layout, Representation representation = Representation::Sparse);

/// prod_k NOT_{m_k} XOR_{i_k m_k}: memory bit k becomes 1 iff it agrees with
/// input bit k. XORs run on the simulated input register when present and as
/// classically conditioned NOTs otherwise.
StateVector apply_difference_encoding(StateVector state, const BitPattern &input);
/// Inverse of apply_difference_encoding; the layer is its own inverse.
StateVector undo_difference_encoding(StateVector state, const BitPattern &input);

/// H_c exp(i pi H_c / 2n) H_c for every control qubit c in turn.
StateVector apply_control_rotations(StateVector state);

/// Probability that the controls are all `branch`, conditional on the
/// ancilla reading `branch` (or unconditional when there is no ancilla).
double good_subspace_probability(const StateVector &state, int branch);

struct IterationSchedule {
    int rounds = 0;
    double theta = 0.0;
    /// sin^2((2 rounds + 1) theta)
    double success_probability = 0.0;
};

/// rounds = floor(pi / (4 asin(sqrt(p_good)))). Throws ZeroMassError for
/// p_good = 0 and DomainError outside (0, 1].
IterationSchedule optimal_iterations(double p_good);
double amplified_success_probability(double p_good, int rounds);

/// `rounds` applications of reflect_about(state) o reflect_good(branch),
/// using `state` itself as the reflection axis.
StateVector amplitude_amplify(const StateVector &state, int branch, int rounds);

// ---------------------------------------------------------------------------
// Distributions

struct DistributionReport {
    /// (1/p) cos^{2b}(pi d_H / 2n) for every stored pattern.
    std::map<BitPattern, double> analytic_unnormalized;
    /// analytic_unnormalized / good_mass, patterns of zero weight omitted.
    std::map<BitPattern, double> analytic_conditional;
    /// Sum of analytic_unnormalized: the good-subspace probability within a
    /// branch.
    double good_mass = 0.0;

    /// Mirror-corrected output frequencies over successful retrievals.
    std::map<BitPattern, double> empirical;
    std::array<std::map<BitPattern, double>, 2> empirical_by_branch;
    std::array<long, 2> branch_successes{};
    double total_variation_distance = 0.0;
    long shots = 0;
    long successes = 0;
    long failed_rounds = 0;
};

/// Analytic fields only. Throws ZeroMassError when every weight vanishes.
DistributionReport analytic_distribution(const BitPattern &input, const PatternSet &patterns, int b);

double total_variation_distance(const std::map<BitPattern, double> &a, const std::map<BitPattern, double> &b);

// ---------------------------------------------------------------------------
// Full retrieval

struct RetrievalOutcome {
    bool success = false;
    BitPattern raw_pattern;
    int ancilla_branch = 0;
    /// mirror(raw_pattern) on branch 1, raw_pattern on branch 0.
    BitPattern output_pattern;
    /// Rounds used by the final attempt.
    int amplification_iterations = 0;
    int total_iterations = 0;
    int attempts = 0;
    int failed_rounds = 0;
    /// Within-branch good-subspace probability before amplification.
    double good_probability_before = 0.0;
};

/**
 * One input against one pattern set, with the deterministic part of the
 * pipeline computed once.
 *
 * Construction runs prepare -> difference encoding -> control rotations ->
 * restore, collapses the result on each possible ancilla value and
 * amplifies each branch for every round count the schedule can ask for.
 * `run` then only draws measurement outcomes, so it is cheap, const and
 * safe to call from several threads with separate generators.
 */
class Retriever {
  public:
    Retriever(const BitPattern &input, const PatternSet &patterns, const RetrievalConfig &config);

    const RegisterLayout &layout() const noexcept { return layout_; }
    const Efficiencies &efficiencies() const noexcept { return efficiencies_; }
    /// State after the control rotations and memory restore, before the
    /// ancilla is measured.
    const StateVector &restored_state() const noexcept { return restored_; }
    /// Largest sparse support seen across the pipeline steps.
    std::size_t max_support() const noexcept { return max_support_; }

    double branch_probability(int branch) const;
    /// Restored state collapsed on ancilla = branch.
    const StateVector &branch_state(int branch) const;
    double good_probability(int branch) const;
    int rounds_for_attempt(int branch, int attempt) const;
    const StateVector &amplified_state(int branch, int rounds) const;

    /// Exact mirror-corrected output distribution of `branch` conditional
    /// on the controls landing in the good subspace.
    std::map<BitPattern, double> exact_output_distribution(int branch) const;

    RetrievalOutcome run(Rng &rng) const;

  private:
    struct Amplified {
        int rounds;
        StateVector state;
        BornSampler sampler;
    };
    struct Branch {
        double probability = 0.0;
        std::optional<StateVector> collapsed;
        double good_probability = 0.0;
        std::vector<int> schedule;
        std::vector<Amplified> amplified;
    };

    const Branch &branch(int b) const;

    BitPattern input_;
    PatternSet patterns_;
    RetrievalConfig config_;
    Efficiencies efficiencies_;
    RegisterLayout layout_;
    StateVector restored_;
    std::size_t max_support_ = 0;
    std::array<Branch, 2> branches_;
};

RetrievalOutcome retrieve(const BitPattern &input, const PatternSet &patterns, const RetrievalConfig &config,
                          Rng &rng);
/// Uses stream 0 of config.seed.
RetrievalOutcome retrieve(const BitPattern &input, const PatternSet &patterns, const RetrievalConfig &config);

/**
 * Analytic distribution plus config.shots independent retrievals.
 *
 * Shots are split into fixed-size chunks; chunk c draws from
 * stream_rng(config.seed, c). Counts are therefore identical for any
 * `threads`, and threads = 1 runs the chunks strictly in order.
 */
DistributionReport sample_distribution(const BitPattern &input, const PatternSet &patterns,
                                       const RetrievalConfig &config, unsigned threads = 1);

} // namespace mirrorqam
