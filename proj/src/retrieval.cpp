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

#include "mirrorqam/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "mirrorqam/complexity.hpp"
#include "mirrorqam/errors.hpp"

namespace mirrorqam {

namespace {

constexpr double kEfficiencySumTolerance = 1e-12;
constexpr long kShotsPerChunk = 8192;
constexpr std::array kEstimateOffsets = {0, 1, -1, 2, -2};

void check_branch(int branch) {
    if (branch != 0 && branch != 1) {
        throw DomainError("branch must be 0 or 1");
    }
}

void check_input(const BitPattern &input, int n) {
    if (input.size() != n) {
        throw DimensionError("input has length " + std::to_string(input.size()) + " but patterns have length " +
                             std::to_string(n));
    }
}

RegisterLayout validated_layout(const BitPattern &input, const PatternSet &patterns, const RetrievalConfig &config) {
    config.validate();
    check_input(input, patterns.n());
    return RegisterLayout::retrieval(patterns.n(), config.b, config.quantum_input);
}

} // namespace

void RetrievalConfig::validate() const {
    if (b < 1) {
        throw DomainError("b must be at least 1");
    }
    if (shots < 1) {
        throw DomainError("shots must be at least 1");
    }
    if (gamma_mode.kind == GammaMode::Kind::Fixed && !(gamma_mode.gamma >= 0.0 && gamma_mode.gamma <= 1.0)) {
        throw DomainError("fixed gamma must lie in [0, 1]");
    }
    if (amplification.kind == AmplificationMode::Kind::Fixed && amplification.rounds < 0) {
        throw DomainError("fixed amplification rounds must be nonnegative");
    }
    if (retry_budget < 0) {
        throw DomainError("retry budget must be nonnegative");
    }
}

Efficiencies resolve_efficiencies(const GammaMode &mode, const PatternSet &patterns) {
    switch (mode.kind) {
    case GammaMode::Kind::MemoryOnly:
        return {1.0, 0.0};
    case GammaMode::Kind::Fixed:
        return {mode.gamma, 1.0 - mode.gamma};
    case GammaMode::Kind::FromCloning: {
        const double s = memory_overlap(patterns);
        if (s == 0.0) {
            throw InfeasibleCloningError("cloning efficiencies requested but <M|Mbar> = 0 (singular)");
        }
        const auto sol = solve_efficiencies(s);
        if (!sol.feasible) {
            throw InfeasibleCloningError("cloning efficiencies requested but infeasible: " + sol.diagnostic);
        }
        return {sol.gamma, sol.gamma_bar};
    }
    }
    return {};
}

StateVector prepare_initial(const BitPattern &input, const PatternSet &patterns, double gamma, double gamma_bar,
                            const RegisterLayout &layout, Representation representation) {
    check_input(input, patterns.n());
    if (layout.memory_width() != patterns.n()) {
        throw DimensionError("memory register width does not match pattern length");
    }
    if (!layout.has(Register::Ancilla)) {
        throw DimensionError("retrieval layout needs an ancilla");
    }
    if (gamma < 0.0 || gamma_bar < 0.0 || std::abs(gamma + gamma_bar - 1.0) > kEfficiencySumTolerance) {
        throw DomainError("gamma and gamma_bar must be nonnegative and sum to 1");
    }
    const BasisIndex in = layout.has(Register::Input) ? layout.place(Register::Input, input.to_mask()) : 0;
    const BasisIndex anc1 = layout.place(Register::Ancilla, 1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(patterns.p()));
    std::vector<BasisAmplitude> terms;
    for (const auto &pattern : patterns) {
        if (gamma > 0.0) {
            terms.push_back({in | layout.place(Register::Memory, pattern.to_mask()), std::sqrt(gamma) * scale});
        }
        if (gamma_bar > 0.0) {
            terms.push_back(
                {in | layout.place(Register::Memory, mirror(pattern).to_mask()) | anc1, std::sqrt(gamma_bar) * scale});
        }
    }
    return StateVector::from_amplitudes(layout, std::move(terms), representation);
}

StateVector apply_difference_encoding(StateVector state, const BitPattern &input) {
    const auto &layout = state.layout();
    check_input(input, layout.memory_width());
    if (!layout.has(Register::Input)) {
        state.apply_agreement_map(input);
        return state;
    }
    for (int k = 0; k < layout.memory_width(); ++k) {
        const int m = layout.qubit(Register::Memory, k);
        state.apply_xor(layout.qubit(Register::Input, k), m);
        state.apply_not(m);
    }
    return state;
}

StateVector undo_difference_encoding(StateVector state, const BitPattern &input) {
    return apply_difference_encoding(std::move(state), input);
}

StateVector apply_control_rotations(StateVector state) {
    const auto &layout = state.layout();
    if (!layout.has(Register::Control)) {
        throw DimensionError("control rotations need a control register");
    }
    for (int c = 0; c < layout.control_width(); ++c) {
        const int q = layout.qubit(Register::Control, c);
        state.apply_hadamard(q);
        state.apply_hamming_phase(q);
        state.apply_hadamard(q);
    }
    return state;
}

double good_subspace_probability(const StateVector &state, int branch) {
    check_branch(branch);
    const auto &layout = state.layout();
    if (!layout.has(Register::Control)) {
        throw DimensionError("good subspace needs a control register");
    }
    const BasisIndex cmask = layout.mask(Register::Control);
    const BasisIndex good = branch == 0 ? 0 : cmask;
    if (!layout.has(Register::Ancilla)) {
        return probability_of_subspace(state, [=](BasisIndex i) { return (i & cmask) == good; });
    }
    const BasisIndex amask = layout.mask(Register::Ancilla);
    const BasisIndex anc = branch == 0 ? 0 : amask;
    const double in_branch = probability_of_subspace(state, [=](BasisIndex i) { return (i & amask) == anc; });
    if (in_branch == 0.0) {
        throw DomainError("ancilla branch " + std::to_string(branch) + " has zero probability");
    }
    const double joint = probability_of_subspace(
        state, [=](BasisIndex i) { return (i & amask) == anc && (i & cmask) == good; });
    return joint / in_branch;
}

IterationSchedule optimal_iterations(double p_good) {
    if (p_good == 0.0) {
        throw ZeroMassError("good subspace has zero probability; amplification cannot succeed");
    }
    if (!(p_good > 0.0 && p_good <= 1.0 + kNormTolerance)) {
        throw DomainError("good-subspace probability must lie in (0, 1]");
    }
    IterationSchedule s;
    s.theta = std::asin(std::sqrt(std::min(p_good, 1.0)));
    s.rounds = static_cast<int>(std::floor(std::numbers::pi / (4.0 * s.theta)));
    s.success_probability = amplified_success_probability(p_good, s.rounds);
    return s;
}

double amplified_success_probability(double p_good, int rounds) {
    const double theta = std::asin(std::sqrt(std::clamp(p_good, 0.0, 1.0)));
    const double s = std::sin((2.0 * rounds + 1.0) * theta);
    return s * s;
}

StateVector amplitude_amplify(const StateVector &state, int branch, int rounds) {
    check_branch(branch);
    if (rounds < 0) {
        throw DomainError("amplification rounds must be nonnegative");
    }
    StateVector current = state;
    for (int r = 0; r < rounds; ++r) {
        current.reflect_good_subspace(branch);
        current = reflect_about_state(current, state);
    }
    return current;
}

DistributionReport analytic_distribution(const BitPattern &input, const PatternSet &patterns, int b) {
    check_input(input, patterns.n());
    DistributionReport report;
    for (const auto &pattern : patterns) {
        const double w = cos_power_weight(hamming_distance(input, pattern), patterns.n(), b) / patterns.p();
        report.analytic_unnormalized[pattern] = w;
        report.good_mass += w;
    }
    if (report.good_mass == 0.0) {
        throw ZeroMassError("input " + input.to_string() +
                            " is at distance n from every stored pattern: all cos^{2b} weights vanish");
    }
    for (const auto &[pattern, w] : report.analytic_unnormalized) {
        if (w > 0.0) {
            report.analytic_conditional[pattern] = w / report.good_mass;
        }
    }
    return report;
}

double total_variation_distance(const std::map<BitPattern, double> &a, const std::map<BitPattern, double> &b) {
    double total = 0.0;
    for (const auto &[pattern, pa] : a) {
        auto it = b.find(pattern);
        total += std::abs(pa - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto &[pattern, pb] : b) {
        if (!a.contains(pattern)) {
            total += std::abs(pb);
        }
    }
    return 0.5 * total;
}

// ---------------------------------------------------------------------------
// Retriever

Retriever::Retriever(const BitPattern &input, const PatternSet &patterns, const RetrievalConfig &config)
    : input_(input), patterns_(patterns), config_(config),
      layout_(validated_layout(input, patterns, config)), restored_(StateVector::basis_state(layout_, 0)) {
    efficiencies_ = resolve_efficiencies(config_.gamma_mode, patterns_);
    // Raises ZeroMassError before any simulation work.
    analytic_distribution(input_, patterns_, config_.b);

    auto track = [this](const StateVector &s) { max_support_ = std::max(max_support_, s.support_size()); };
    StateVector state = prepare_initial(input_, patterns_, efficiencies_.gamma, efficiencies_.gamma_bar, layout_,
                                        config_.representation);
    track(state);
    state = apply_difference_encoding(std::move(state), input_);
    track(state);
    for (int c = 0; c < layout_.control_width(); ++c) {
        const int q = layout_.qubit(Register::Control, c);
        state.apply_hadamard(q);
        track(state);
        state.apply_hamming_phase(q);
        state.apply_hadamard(q);
        track(state);
    }
    restored_ = undo_difference_encoding(std::move(state), input_);
    track(restored_);

    const BasisIndex amask = layout_.mask(Register::Ancilla);
    const IterationSchedule estimate = optimal_iterations(1.0 / std::pow(complexity_uniform_approx(config_.b), 2));
    for (int b = 0; b < 2; ++b) {
        Branch &br = branches_[static_cast<std::size_t>(b)];
        const BasisIndex anc = b == 0 ? 0 : amask;
        auto keep = [=](BasisIndex i) { return (i & amask) == anc; };
        br.probability = probability_of_subspace(restored_, keep);
        if (br.probability == 0.0) {
            continue;
        }
        StateVector collapsed = restored_;
        collapsed.collapse(keep, br.probability);
        br.good_probability = good_subspace_probability(collapsed, b);

        const int attempts = 1 + config_.retry_budget;
        for (int a = 0; a < attempts; ++a) {
            int rounds = 0;
            switch (config_.amplification.kind) {
            case AmplificationMode::Kind::Exact:
                rounds = optimal_iterations(br.good_probability).rounds;
                break;
            case AmplificationMode::Kind::Fixed:
                rounds = config_.amplification.rounds;
                break;
            case AmplificationMode::Kind::Estimate:
                rounds = std::max(0, estimate.rounds +
                                         kEstimateOffsets[static_cast<std::size_t>(a) % kEstimateOffsets.size()]);
                break;
            }
            br.schedule.push_back(rounds);
        }
        std::vector<int> distinct = br.schedule;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int rounds : distinct) {
            StateVector amplified = amplitude_amplify(collapsed, b, rounds);
            BornSampler sampler(amplified);
            br.amplified.push_back({rounds, std::move(amplified), std::move(sampler)});
        }
        br.collapsed = std::move(collapsed);
    }
}

const Retriever::Branch &Retriever::branch(int b) const {
    check_branch(b);
    const Branch &br = branches_[static_cast<std::size_t>(b)];
    if (!br.collapsed) {
        throw DomainError("ancilla branch " + std::to_string(b) + " has zero probability");
    }
    return br;
}

double Retriever::branch_probability(int b) const {
    check_branch(b);
    return branches_[static_cast<std::size_t>(b)].probability;
}

const StateVector &Retriever::branch_state(int b) const { return *branch(b).collapsed; }

double Retriever::good_probability(int b) const { return branch(b).good_probability; }

int Retriever::rounds_for_attempt(int b, int attempt) const {
    const auto &schedule = branch(b).schedule;
    return schedule[static_cast<std::size_t>(attempt) % schedule.size()];
}

const StateVector &Retriever::amplified_state(int b, int rounds) const {
    for (const auto &a : branch(b).amplified) {
        if (a.rounds == rounds) {
            return a.state;
        }
    }
    throw DomainError("no amplified state cached for " + std::to_string(rounds) + " rounds");
}

std::map<BitPattern, double> Retriever::exact_output_distribution(int b) const {
    const StateVector &state = branch_state(b);
    const BasisIndex cmask = layout_.mask(Register::Control);
    const BasisIndex good = b == 0 ? 0 : cmask;
    std::map<BitPattern, double> dist;
    double total = 0.0;
    state.for_each_nonzero([&](BasisIndex i, Amplitude a) {
        if ((i & cmask) != good) {
            return;
        }
        auto raw = BitPattern::from_mask(layout_.extract(Register::Memory, i), layout_.memory_width());
        dist[b == 0 ? raw : mirror(raw)] += std::norm(a);
        total += std::norm(a);
    });
    for (auto &[pattern, prob] : dist) {
        prob /= total;
    }
    return dist;
}

RetrievalOutcome Retriever::run(Rng &rng) const {
    const BasisIndex cmask = layout_.mask(Register::Control);
    int total_rounds = 0;
    int failed = 0;
    const int attempts = 1 + config_.retry_budget;
    for (int a = 0;; ++a) {
        // Ancilla first, then controls and memory jointly from the amplified
        // branch state.
        const int anc = uniform_unit(rng) < branches_[1].probability ? 1 : 0;
        const Branch &br = branch(anc);
        const int rounds = rounds_for_attempt(anc, a);
        const Amplified *amp = nullptr;
        for (const auto &candidate : br.amplified) {
            if (candidate.rounds == rounds) {
                amp = &candidate;
            }
        }
        const BasisIndex index = amp->sampler.sample(rng);
        total_rounds += rounds;
        const BasisIndex good = anc == 0 ? 0 : cmask;
        const bool success = (index & cmask) == good;
        if (!success) {
            ++failed;
        }
        if (success || a + 1 == attempts) {
            auto raw = BitPattern::from_mask(layout_.extract(Register::Memory, index), layout_.memory_width());
            auto output = anc == 1 ? mirror(raw) : raw;
            return RetrievalOutcome{
                .success = success,
                .raw_pattern = std::move(raw),
                .ancilla_branch = anc,
                .output_pattern = std::move(output),
                .amplification_iterations = rounds,
                .total_iterations = total_rounds,
                .attempts = a + 1,
                .failed_rounds = failed,
                .good_probability_before = br.good_probability,
            };
        }
    }
}

RetrievalOutcome retrieve(const BitPattern &input, const PatternSet &patterns, const RetrievalConfig &config,
                          Rng &rng) {
    return Retriever(input, patterns, config).run(rng);
}

RetrievalOutcome retrieve(const BitPattern &input, const PatternSet &patterns, const RetrievalConfig &config) {
    Rng rng = stream_rng(config.seed, 0);
    return retrieve(input, patterns, config, rng);
}

DistributionReport sample_distribution(const BitPattern &input, const PatternSet &patterns,
                                       const RetrievalConfig &config, unsigned threads) {
    DistributionReport report = analytic_distribution(input, patterns, config.b);
    const Retriever retriever(input, patterns, config);

    struct Tally {
        std::array<std::map<BitPattern, long>, 2> counts;
        long failed_rounds = 0;
    };
    const long chunks = (config.shots + kShotsPerChunk - 1) / kShotsPerChunk;
    std::vector<Tally> tallies(static_cast<std::size_t>(chunks));
    auto run_chunk = [&](long c) {
        Rng rng = stream_rng(config.seed, static_cast<std::uint64_t>(c));
        const long begin = c * kShotsPerChunk;
        const long end = std::min(config.shots, begin + kShotsPerChunk);
        Tally &t = tallies[static_cast<std::size_t>(c)];
        for (long s = begin; s < end; ++s) {
            const auto outcome = retriever.run(rng);
            t.failed_rounds += outcome.failed_rounds;
            if (outcome.success) {
                ++t.counts[static_cast<std::size_t>(outcome.ancilla_branch)][outcome.output_pattern];
            }
        }
    };
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (threads == 1) {
        for (long c = 0; c < chunks; ++c) {
            run_chunk(c);
        }
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (long c = w; c < chunks; c += threads) {
                    run_chunk(c);
                }
            });
        }
    }

    std::array<std::map<BitPattern, long>, 2> counts;
    for (const auto &t : tallies) {
        report.failed_rounds += t.failed_rounds;
        for (std::size_t b = 0; b < 2; ++b) {
            for (const auto &[pattern, count] : t.counts[b]) {
                counts[b][pattern] += count;
            }
        }
    }
    std::map<BitPattern, long> combined;
    for (std::size_t b = 0; b < 2; ++b) {
        for (const auto &[pattern, count] : counts[b]) {
            report.branch_successes[b] += count;
            combined[pattern] += count;
        }
        for (const auto &[pattern, count] : counts[b]) {
            report.empirical_by_branch[b][pattern] =
                static_cast<double>(count) / static_cast<double>(report.branch_successes[b]);
        }
    }
    report.shots = config.shots;
    report.successes = report.branch_successes[0] + report.branch_successes[1];
    if (report.successes == 0) {
        report.total_variation_distance = 1.0;
        return report;
    }
    for (const auto &[pattern, count] : combined) {
        report.empirical[pattern] = static_cast<double>(count) / static_cast<double>(report.successes);
    }
    report.total_variation_distance = total_variation_distance(report.empirical, report.analytic_conditional);
    return report;
}

} // namespace mirrorqam
