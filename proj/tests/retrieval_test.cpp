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

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "mirrorqam/complexity.hpp"
#include "mirrorqam/errors.hpp"
#include "mirrorqam/retrieval.hpp"
#include "test_support.hpp"

namespace mirrorqam {
namespace {

using namespace std::complex_literals;

BitPattern bits(const char *s) { return BitPattern::parse(s); }

PatternSet set_of(std::initializer_list<const char *> items) {
    std::vector<BitPattern> patterns;
    for (const char *s : items) {
        patterns.push_back(BitPattern::parse(s));
    }
    return PatternSet(std::move(patterns));
}

RetrievalConfig config_with(int b, GammaMode gamma = GammaMode::memory_only(),
                            AmplificationMode amp = AmplificationMode::exact()) {
    RetrievalConfig c;
    c.b = b;
    c.gamma_mode = gamma;
    c.amplification = amp;
    return c;
}

struct Instance {
    PatternSet patterns;
    BitPattern input;
    int b;
};

// Random desk-scale instance with at least one pattern of nonzero weight.
Instance random_instance(std::mt19937_64 &rng, int n_lo, int n_hi, int p_lo, int p_hi, int b_lo, int b_hi) {
    std::uniform_int_distribution<int> n_dist(n_lo, n_hi);
    std::uniform_int_distribution<int> b_dist(b_lo, b_hi);
    for (;;) {
        const int n = n_dist(rng);
        const int p = std::uniform_int_distribution<int>(p_lo, std::min(p_hi, 1 << n))(rng);
        auto patterns = random_pattern_set(n, p, rng);
        auto input = random_pattern(n, rng);
        const bool has_mass = std::any_of(patterns.begin(), patterns.end(),
                                          [&](const BitPattern &q) { return hamming_distance(input, q) < n; });
        if (has_mass) {
            return {std::move(patterns), std::move(input), b_dist(rng)};
        }
    }
}

TEST(PrepareInitial, MemoryOnly) {
    const auto s = set_of({"01", "10"});
    const auto layout = RegisterLayout::retrieval(2, 1);
    const auto psi = prepare_initial(bits("00"), s, 1.0, 0.0, layout);
    EXPECT_EQ(psi.support_size(), 2U);
    EXPECT_NEAR(psi.amplitude(layout.place(Register::Memory, bits("01").to_mask())).real(), 1 / std::numbers::sqrt2,
                1e-15);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
}

TEST(PrepareInitial, EvenBranchesOnComplementClosedSet) {
    const auto layout = RegisterLayout::retrieval(2, 1);
    const auto psi = prepare_initial(bits("00"), set_of({"00", "11"}), 0.5, 0.5, layout);
    EXPECT_EQ(psi.support_size(), 4U);
    for (const auto &e : psi.entries()) {
        EXPECT_NEAR(std::abs(e.amplitude), 0.5, 1e-15);
    }
    EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
    EXPECT_THROW(prepare_initial(bits("00"), set_of({"00"}), 0.5, 0.6, layout), DomainError);
    EXPECT_THROW(prepare_initial(bits("000"), set_of({"00"}), 1.0, 0.0, layout), DimensionError);
}

TEST(DifferenceEncoding, Examples) {
    const auto layout = RegisterLayout::retrieval(2, 1);
    const auto mem = [&](const char *p) { return layout.place(Register::Memory, bits(p).to_mask()); };
    auto s = apply_difference_encoding(StateVector::basis_state(layout, mem("00")), bits("00"));
    EXPECT_NEAR(s.amplitude(mem("11")).real(), 1.0, 1e-15);
    s = apply_difference_encoding(StateVector::basis_state(layout, mem("00")), bits("01"));
    EXPECT_NEAR(s.amplitude(mem("10")).real(), 1.0, 1e-15);
}

TEST(DifferenceEncoding, RoundTripsOnRandomStates) {
    auto &rng = testing::test_rng();
    for (int n = 1; n <= 6; ++n) {
        for (bool quantum : {false, true}) {
            const auto layout = RegisterLayout::retrieval(n, 1, quantum);
            const auto input = random_pattern(n, rng);
            auto state = testing::random_state(layout, 12, rng);
            if (quantum) {
                // The input register must hold the input for the two paths to agree.
                std::vector<BasisAmplitude> terms;
                for (auto e : state.entries()) {
                    e.index = (e.index & ~layout.mask(Register::Input)) |
                              layout.place(Register::Input, input.to_mask());
                    terms.push_back(e);
                }
                auto merged = std::move(terms);
                double norm_sq = 0;
                std::map<BasisIndex, Amplitude> sum;
                for (const auto &t : merged) {
                    sum[t.index] += t.amplitude;
                }
                for (const auto &[i, a] : sum) {
                    norm_sq += std::norm(a);
                }
                std::vector<BasisAmplitude> normed;
                for (const auto &[i, a] : sum) {
                    normed.push_back({i, a / std::sqrt(norm_sq)});
                }
                state = StateVector::from_amplitudes(layout, normed);
            }
            const auto back = undo_difference_encoding(apply_difference_encoding(state, input), input);
            for (const auto &e : state.entries()) {
                ASSERT_EQ(back.amplitude(e.index), e.amplitude);
            }
            ASSERT_EQ(back.support_size(), state.support_size());
        }
    }
}

TEST(ControlRotations, ExactMatchKeepsControlsAtZero) {
    for (int b = 1; b <= 4; ++b) {
        const auto layout = RegisterLayout::retrieval(3, b);
        const auto input = bits("101");
        auto psi = prepare_initial(input, set_of({"101"}), 1.0, 0.0, layout);
        psi = undo_difference_encoding(apply_control_rotations(apply_difference_encoding(psi, input)), input);
        EXPECT_EQ(psi.support_size(), 1U);
        EXPECT_NEAR(std::abs(psi.amplitude(layout.place(Register::Memory, input.to_mask())) - 1.0), 0.0, 1e-14);
    }
}

TEST(ControlRotations, SingleQubitAtFullDistance) {
    // n = 1, b = 1, stored 1, input 0: control ends in cos(pi/2)|0> + i sin(pi/2)|1> = i|1>.
    const auto layout = RegisterLayout::retrieval(1, 1);
    const auto input = bits("0");
    auto psi = prepare_initial(input, set_of({"1"}), 1.0, 0.0, layout);
    psi = apply_control_rotations(apply_difference_encoding(psi, input));
    const BasisIndex target = layout.place(Register::Memory, 0) | layout.place(Register::Control, 1);
    EXPECT_NEAR(std::abs(psi.amplitude(target) - 1i), 0.0, 1e-15);
    EXPECT_EQ(psi.support_size(), 1U);
}

// Every amplitude of the restored state against the closed form, on both
// branches and with the input register both classical and simulated.
TEST(ControlRotations, RestoredStateMatchesClosedForm) {
    auto &rng = testing::test_rng();
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_instance(rng, 2, 5, 1, 6, 1, 3);
        const double gamma = 0.2 + 0.6 * testing::test_rng()() / 1.8446744073709552e19;
        for (bool quantum : {false, true}) {
            const int n = inst.patterns.n();
            const auto layout = RegisterLayout::retrieval(n, inst.b, quantum);
            auto psi = prepare_initial(inst.input, inst.patterns, gamma, 1 - gamma, layout);
            psi = undo_difference_encoding(apply_control_rotations(apply_difference_encoding(psi, inst.input)),
                                           inst.input);
            const BasisIndex in = quantum ? layout.place(Register::Input, inst.input.to_mask()) : 0;
            std::map<BasisIndex, Amplitude> expected;
            for (const auto &q : inst.patterns) {
                const int d = testing::brute_hamming(inst.input.to_string(), q.to_string());
                for (std::uint64_t j = 0; j < (std::uint64_t{1} << inst.b); ++j) {
                    const int ones = std::popcount(j);
                    const BasisIndex ctrl = layout.place(Register::Control, j);
                    expected[in | layout.place(Register::Memory, q.to_mask()) | ctrl] =
                        testing::oracle_restored_amplitude(d, n, inst.b, ones, gamma, inst.patterns.p());
                    expected[in | layout.place(Register::Memory, mirror(q).to_mask()) | ctrl |
                             layout.place(Register::Ancilla, 1)] =
                        testing::oracle_restored_amplitude(n - d, n, inst.b, ones, 1 - gamma, inst.patterns.p());
                }
            }
            for (const auto &[i, a] : expected) {
                ASSERT_NEAR(std::abs(psi.amplitude(i) - a), 0.0, 1e-12) << "trial " << trial;
            }
            for (const auto &e : psi.entries()) {
                ASSERT_TRUE(expected.contains(e.index)) << "unexpected basis state " << e.index;
            }
        }
    }
}

TEST(AnalyticDistribution, Examples) {
    auto r = analytic_distribution(bits("00"), set_of({"00", "11"}), 1);
    EXPECT_DOUBLE_EQ(r.analytic_unnormalized.at(bits("00")), 0.5);
    EXPECT_DOUBLE_EQ(r.analytic_unnormalized.at(bits("11")), 0.0);
    EXPECT_EQ(r.analytic_conditional.size(), 1U);
    EXPECT_DOUBLE_EQ(r.analytic_conditional.at(bits("00")), 1.0);

    // cos^4(pi/4) = 1/4
    r = analytic_distribution(bits("00"), set_of({"00", "01"}), 2);
    EXPECT_NEAR(r.analytic_unnormalized.at(bits("00")), 0.5, 1e-15);
    EXPECT_NEAR(r.analytic_unnormalized.at(bits("01")), 0.125, 1e-15);
    EXPECT_NEAR(r.analytic_conditional.at(bits("00")), 0.8, 1e-15);
    EXPECT_NEAR(r.analytic_conditional.at(bits("01")), 0.2, 1e-15);
    EXPECT_NEAR(r.good_mass, 0.625, 1e-15);

    for (int b = 1; b <= 6; ++b) {
        r = analytic_distribution(bits("0110"), set_of({"0110"}), b);
        EXPECT_DOUBLE_EQ(r.analytic_conditional.at(bits("0110")), 1.0);
    }
}

TEST(AnalyticDistribution, ZeroMassIsAnError) {
    EXPECT_THROW(analytic_distribution(bits("00"), set_of({"11"}), 1), ZeroMassError);
    EXPECT_THROW(Retriever(bits("000"), set_of({"111"}), config_with(2)), ZeroMassError);
}

TEST(GoodSubspace, ExactMatchIsCertain) {
    const Retriever r(bits("0101"), set_of({"0101"}), config_with(3));
    EXPECT_NEAR(r.good_probability(0), 1.0, 1e-14);
}

TEST(GoodSubspace, MatchesAnalyticMassOnBothBranches) {
    auto &rng = testing::test_rng();
    for (int trial = 0; trial < 50; ++trial) {
        const auto inst = random_instance(rng, 2, 6, 1, 8, 1, 4);
        const Retriever r(inst.input, inst.patterns, config_with(inst.b, GammaMode::fixed(0.5)));
        double mass = 0.0;
        for (const auto &q : inst.patterns) {
            mass += testing::oracle_weight(testing::brute_hamming(inst.input.to_string(), q.to_string()),
                                           inst.patterns.n(), inst.b);
        }
        mass /= inst.patterns.p();
        EXPECT_NEAR(r.good_probability(0), mass, 1e-12);
        EXPECT_NEAR(r.good_probability(1), mass, 1e-12);
        EXPECT_NEAR(r.good_probability(0), r.good_probability(1), 1e-12);
        EXPECT_NEAR(good_subspace_probability(r.restored_state(), 1), mass, 1e-12);
    }
}

TEST(OptimalIterations, Examples) {
    EXPECT_EQ(optimal_iterations(1.0).rounds, 0);
    EXPECT_NEAR(optimal_iterations(1.0).success_probability, 1.0, 1e-15);

    const auto quarter = optimal_iterations(0.25);
    EXPECT_EQ(quarter.rounds, 1);
    EXPECT_NEAR(quarter.theta, std::numbers::pi / 6, 1e-15);
    EXPECT_NEAR(quarter.success_probability, 1.0, 1e-12);

    // pi / (4 * pi/4) = 1 sits on the floor boundary; either count is allowed,
    // the reported success probability must match the chosen count.
    const auto half = optimal_iterations(0.5);
    EXPECT_TRUE(half.rounds == 0 || half.rounds == 1);
    EXPECT_NEAR(half.success_probability, 0.5, 1e-12);

    EXPECT_THROW(optimal_iterations(0.0), ZeroMassError);
    EXPECT_THROW(optimal_iterations(-0.1), DomainError);
}

// The two-pattern set {01, 10} with input 00 and b = 2 has
// P_good = cos^4(pi/4) = 1/4 within the branch.
TEST(Amplification, QuarterReachesOneInOneRound) {
    const Retriever r(bits("00"), set_of({"01", "10"}), config_with(2));
    EXPECT_NEAR(r.good_probability(0), 0.25, 1e-12);
    const auto &start = r.branch_state(0);
    EXPECT_NEAR(good_subspace_probability(amplitude_amplify(start, 0, 1), 0), 1.0, 1e-9);
    const auto zero = amplitude_amplify(start, 0, 0);
    for (const auto &e : start.entries()) {
        EXPECT_EQ(zero.amplitude(e.index), e.amplitude);
    }
}

TEST(Amplification, FollowsSineLaw) {
    auto &rng = testing::test_rng();
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = random_instance(rng, 3, 6, 2, 8, 1, 4);
        const int branch = trial % 2;
        const Retriever r(inst.input, inst.patterns, config_with(inst.b, GammaMode::fixed(0.5)));
        const double p_good = r.good_probability(branch);
        const double theta = std::asin(std::sqrt(p_good));
        StateVector state = r.branch_state(branch);
        const StateVector axis = state;
        for (int k = 0; k <= 20; ++k) {
            if (k > 0) {
                state.reflect_good_subspace(branch);
                state = reflect_about_state(state, axis);
            }
            ASSERT_NEAR(state.norm(), 1.0, 1e-10);
            const double expected = std::pow(std::sin((2 * k + 1) * theta), 2);
            ASSERT_NEAR(good_subspace_probability(state, branch), expected, 1e-9) << "k = " << k;
        }
        EXPECT_NEAR(good_subspace_probability(amplitude_amplify(axis, branch, 7), branch),
                    amplified_success_probability(p_good, 7), 1e-9);
    }
}

// Amplification rotates within span{good, bad}: the conditional distribution
// over memory contents inside the good subspace does not change.
TEST(Amplification, PreservesConditionalDistribution) {
    const auto s = set_of({"0000", "0011", "0111", "1000"});
    const Retriever r(bits("0001"), s, config_with(2));
    const auto before = r.exact_output_distribution(0);
    const auto analytic = analytic_distribution(bits("0001"), s, 2);
    EXPECT_LT(total_variation_distance(before, analytic.analytic_conditional), 1e-12);
}

TEST(Retrieve, ExactMatchReturnsPatternWithoutRounds) {
    Rng rng(1);
    const auto out = retrieve(bits("0110"), set_of({"0110"}), config_with(3), rng);
    EXPECT_TRUE(out.success);
    EXPECT_EQ(out.output_pattern, bits("0110"));
    EXPECT_EQ(out.amplification_iterations, 0);
    EXPECT_EQ(out.ancilla_branch, 0);
}

// P_good = 1/2 leaves sin^2 at 1/2 for any floor-schedule round count, so
// single attempts fail half the time; successful ones never return 11.
TEST(Retrieve, ComplementPairReturnsCloserPattern) {
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto config = config_with(1);
        config.seed = seed;
        const auto out = retrieve(bits("00"), set_of({"00", "11"}), config);
        EXPECT_NEAR(out.good_probability_before, 0.5, 1e-12);
        if (out.success) {
            ++successes;
            ASSERT_EQ(out.output_pattern, bits("00"));
        }
    }
    EXPECT_GT(successes, 60);
    EXPECT_LT(successes, 140);
}

TEST(Retrieve, MirrorCorrectionOnBranchOne) {
    Rng rng(4);
    const auto s = set_of({"000", "111", "001", "110"});
    const Retriever r(bits("001"), s, config_with(2, GammaMode::from_cloning()));
    EXPECT_DOUBLE_EQ(r.efficiencies().gamma, 0.5);
    int seen_branch_one = 0;
    for (int i = 0; i < 200; ++i) {
        const auto out = r.run(rng);
        if (out.ancilla_branch == 1) {
            ++seen_branch_one;
            EXPECT_EQ(out.output_pattern, mirror(out.raw_pattern));
        } else {
            EXPECT_EQ(out.output_pattern, out.raw_pattern);
        }
    }
    EXPECT_GT(seen_branch_one, 50);
}

TEST(Retrieve, CloningModeNeedsFeasibleSet) {
    EXPECT_THROW(Retriever(bits("00"), set_of({"00", "01"}), config_with(1, GammaMode::from_cloning())),
                 InfeasibleCloningError);
    EXPECT_THROW(Retriever(bits("000"), set_of({"000", "111", "001"}), config_with(1, GammaMode::from_cloning())),
                 InfeasibleCloningError);
}

TEST(Retrieve, ConfigValidation) {
    const auto s = set_of({"00"});
    EXPECT_THROW(Retriever(bits("00"), s, config_with(0)), DomainError);
    EXPECT_THROW(Retriever(bits("00"), s, config_with(1, GammaMode::fixed(1.5))), DomainError);
    EXPECT_THROW(Retriever(bits("00"), s, config_with(1, GammaMode::memory_only(), AmplificationMode::fixed(-1))),
                 DomainError);
    EXPECT_THROW(Retriever(bits("000"), s, config_with(1)), DimensionError);
}

TEST(Retrieve, FailedRoundsAreReportedAndRetried) {
    // P_good = 0.625 -> 0 exact rounds, 37.5% failures per attempt.
    const auto s = set_of({"00", "01"});
    auto config = config_with(2);
    const Retriever once(bits("00"), s, config);
    Rng rng(8);
    int failures = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto out = once.run(rng);
        EXPECT_EQ(out.attempts, 1);
        failures += out.success ? 0 : 1;
        EXPECT_EQ(out.failed_rounds, out.success ? 0 : 1);
    }
    EXPECT_NEAR(failures / 2000.0, 0.375, 0.05);

    config.retry_budget = 5;
    const Retriever retried(bits("00"), s, config);
    int successes = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto out = retried.run(rng);
        successes += out.success ? 1 : 0;
        EXPECT_EQ(out.failed_rounds, out.attempts - (out.success ? 1 : 0));
    }
    EXPECT_GT(successes, 1990);
}

TEST(Retrieve, EstimateModeVariesRoundsAroundTheEstimate) {
    auto config = config_with(16, GammaMode::memory_only(), AmplificationMode::estimate());
    config.retry_budget = 4;
    const auto s = set_of({"000000", "000111", "111000", "101010"});
    const Retriever r(bits("000001"), s, config);
    const auto base = optimal_iterations(1.0 / std::pow(complexity_uniform_approx(16), 2)).rounds;
    EXPECT_EQ(r.rounds_for_attempt(0, 0), base);
    EXPECT_EQ(r.rounds_for_attempt(0, 1), base + 1);
    EXPECT_EQ(r.rounds_for_attempt(0, 2), std::max(0, base - 1));
    EXPECT_EQ(r.rounds_for_attempt(0, 3), base + 2);
    EXPECT_EQ(r.rounds_for_attempt(0, 4), std::max(0, base - 2));

    const auto fixed = Retriever(bits("000001"), s, config_with(3, GammaMode::memory_only(), AmplificationMode::fixed(2)));
    EXPECT_EQ(fixed.rounds_for_attempt(0, 0), 2);
}

TEST(Retrieve, SparseSupportStaysBounded) {
    auto &rng = testing::test_rng();
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_instance(rng, 2, 6, 1, 8, 1, 4);
        const Retriever r(inst.input, inst.patterns, config_with(inst.b, GammaMode::fixed(0.5)));
        EXPECT_LE(r.max_support(), static_cast<std::size_t>(2 * inst.patterns.p()) << inst.b);
    }
}

TEST(Retrieve, QuantumInputMatchesClassicalInput) {
    auto &rng = testing::test_rng();
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = random_instance(rng, 2, 4, 1, 6, 1, 3);
        auto config = config_with(inst.b, GammaMode::fixed(0.3));
        const Retriever classical(inst.input, inst.patterns, config);
        config.quantum_input = true;
        const Retriever quantum(inst.input, inst.patterns, config);
        const BasisIndex in = quantum.layout().place(Register::Input, inst.input.to_mask());
        const int shift = quantum.layout().offset(Register::Memory);
        for (const auto &e : classical.restored_state().entries()) {
            ASSERT_NEAR(std::abs(quantum.restored_state().amplitude((e.index << shift) | in) - e.amplitude), 0.0,
                        1e-14);
        }
        ASSERT_EQ(classical.restored_state().support_size(), quantum.restored_state().support_size());
    }
}

TEST(Retrieve, DenseAndSparsePipelinesAgree) {
    auto &rng = testing::test_rng();
    for (int trial = 0; trial < 15; ++trial) {
        const auto inst = random_instance(rng, 1, 4, 1, 6, 1, 3);
        auto config = config_with(inst.b, GammaMode::fixed(0.5));
        const Retriever sparse(inst.input, inst.patterns, config);
        config.representation = Representation::Dense;
        const Retriever dense(inst.input, inst.patterns, config);
        const BasisIndex size = BasisIndex{1} << sparse.layout().num_qubits();
        for (BasisIndex i = 0; i < size; ++i) {
            ASSERT_NEAR(std::abs(sparse.restored_state().amplitude(i) - dense.restored_state().amplitude(i)), 0.0,
                        1e-12);
        }
        for (int branch = 0; branch < 2; ++branch) {
            const int k = sparse.rounds_for_attempt(branch, 0);
            ASSERT_EQ(k, dense.rounds_for_attempt(branch, 0));
            const auto &a = sparse.amplified_state(branch, k);
            const auto &b = dense.amplified_state(branch, k);
            for (BasisIndex i = 0; i < size; ++i) {
                ASSERT_NEAR(std::abs(a.amplitude(i) - b.amplitude(i)), 0.0, 1e-12);
            }
        }
    }
}

TEST(Distribution, EmpiricalMatchesAnalyticOnRandomInstances) {
    auto &rng = testing::test_rng();
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = random_instance(rng, 2, 6, 2, 8, 1, 4);
        auto config = config_with(inst.b);
        config.shots = 100000;
        config.seed = 1000 + trial;
        const auto report = sample_distribution(inst.input, inst.patterns, config, 4);
        EXPECT_LT(report.total_variation_distance, 0.01) << "trial " << trial;
        double total = 0.0;
        for (const auto &[pattern, f] : report.empirical) {
            total += f;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        double cond = 0.0;
        for (const auto &[pattern, f] : report.analytic_conditional) {
            cond += f;
        }
        EXPECT_NEAR(cond, 1.0, 1e-12);
    }
}

TEST(Distribution, ResultsIndependentOfThreadCount) {
    auto config = config_with(2, GammaMode::fixed(0.5));
    config.shots = 50000;
    config.seed = 77;
    const auto s = set_of({"0000", "0011", "1100", "1111", "0101"});
    const auto a = sample_distribution(bits("0001"), s, config, 1);
    const auto b = sample_distribution(bits("0001"), s, config, 3);
    EXPECT_EQ(a.empirical, b.empirical);
    EXPECT_EQ(a.branch_successes, b.branch_successes);
    EXPECT_EQ(a.failed_rounds, b.failed_rounds);
}

TEST(Accuracy, NearestPatternProbabilityNondecreasingInB) {
    const auto s = set_of({"000000", "111000", "011110", "111111"});
    const auto input = bits("000000");
    double previous = 0.0;
    for (int b = 1; b <= 8; ++b) {
        const Retriever r(input, s, config_with(b));
        const double p = r.exact_output_distribution(0).at(input);
        EXPECT_GE(p, previous - 1e-15) << "b = " << b;
        previous = p;
    }
    EXPECT_GT(previous, 0.99);
}

TEST(Complexity, InstanceExamples) {
    EXPECT_DOUBLE_EQ(complexity_estimate(bits("010"), set_of({"010"}), 5), 1.0);
    EXPECT_NEAR(complexity_estimate(bits("00"), set_of({"00", "01"}), 2), std::sqrt(1.6), 1e-14);
    EXPECT_TRUE(std::isinf(complexity_estimate(bits("00"), set_of({"11"}), 1)));
}

TEST(Complexity, SquareTimesGoodMassIsOne) {
    auto &rng = testing::test_rng();
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_instance(rng, 2, 6, 1, 8, 1, 4);
        const Retriever r(inst.input, inst.patterns, config_with(inst.b));
        const double c = complexity_estimate(inst.input, inst.patterns, inst.b);
        EXPECT_NEAR(c * c * r.good_probability(0), 1.0, 1e-10);
    }
}

} // namespace
} // namespace mirrorqam
