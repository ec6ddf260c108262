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

#include "mirrorqam/statevector.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numbers>
#include <string>

#include "mirrorqam/errors.hpp"

namespace mirrorqam {

namespace {

constexpr std::array kPackingOrder = {Register::Input, Register::Memory, Register::Clone, Register::Control,
                                      Register::Ancilla};

constexpr BasisIndex bit_of(int qubit) { return BasisIndex{1} << qubit; }

void check_same_layout(const StateVector &a, const StateVector &b) {
    if (!(a.layout() == b.layout())) {
        throw DimensionError("states are defined over different register layouts");
    }
}

} // namespace

std::string_view to_string(Register r) {
    switch (r) {
    case Register::Input:
        return "input";
    case Register::Memory:
        return "memory";
    case Register::Clone:
        return "clone";
    case Register::Control:
        return "control";
    case Register::Ancilla:
        return "ancilla";
    }
    return "?";
}

std::string_view to_string(Representation r) { return r == Representation::Sparse ? "sparse" : "dense"; }

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(int memory_width, int control_width, Options options) {
    if (memory_width < 1) {
        throw DimensionError("memory register needs at least one qubit");
    }
    if (control_width < 0) {
        throw DimensionError("control register width cannot be negative");
    }
    widths_[static_cast<std::size_t>(Register::Input)] = options.quantum_input ? memory_width : 0;
    widths_[static_cast<std::size_t>(Register::Memory)] = memory_width;
    widths_[static_cast<std::size_t>(Register::Clone)] = options.clone_register ? memory_width : 0;
    widths_[static_cast<std::size_t>(Register::Control)] = control_width;
    widths_[static_cast<std::size_t>(Register::Ancilla)] = options.ancilla ? 1 : 0;
    int offset = 0;
    for (auto r : kPackingOrder) {
        offsets_[static_cast<std::size_t>(r)] = offset;
        offset += width(r);
    }
    num_qubits_ = offset;
    if (num_qubits_ > 63) {
        throw DimensionError("layout needs " + std::to_string(num_qubits_) + " qubits; at most 63 are supported");
    }
}

RegisterLayout RegisterLayout::retrieval(int n, int b, bool quantum_input) {
    if (b < 1) {
        throw DimensionError("retrieval needs at least one control qubit");
    }
    return RegisterLayout(n, b, Options{.quantum_input = quantum_input, .clone_register = false, .ancilla = true});
}

RegisterLayout RegisterLayout::cloning(int n) {
    return RegisterLayout(n, 0, Options{.quantum_input = false, .clone_register = true, .ancilla = true});
}

int RegisterLayout::qubit(Register r, int k) const {
    if (k < 0 || k >= width(r)) {
        throw IndexError("qubit " + std::to_string(k) + " outside " + std::string(to_string(r)) +
                         " register of width " + std::to_string(width(r)));
    }
    return offset(r) + k;
}

bool RegisterLayout::in_register(Register r, int qubit) const noexcept {
    return qubit >= offset(r) && qubit < offset(r) + width(r);
}

BasisIndex RegisterLayout::mask(Register r) const noexcept {
    if (width(r) == 0) {
        return 0;
    }
    return ((BasisIndex{1} << width(r)) - 1) << offset(r);
}

std::uint64_t RegisterLayout::extract(Register r, BasisIndex index) const noexcept {
    return (index & mask(r)) >> offset(r);
}

BasisIndex RegisterLayout::place(Register r, std::uint64_t value) const {
    if (width(r) == 0 || (width(r) < 64 && (value >> width(r)) != 0)) {
        throw DimensionError("value does not fit the " + std::string(to_string(r)) + " register");
    }
    return value << offset(r);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(RegisterLayout layout, Representation representation)
    : layout_(layout), representation_(representation) {
    if (representation_ == Representation::Dense) {
        if (layout_.num_qubits() > kMaxDenseQubits) {
            throw DimensionError("dense state over " + std::to_string(layout_.num_qubits()) +
                                 " qubits exceeds the limit of " + std::to_string(kMaxDenseQubits));
        }
        dense_.assign(std::size_t{1} << layout_.num_qubits(), Amplitude{});
    }
}

StateVector StateVector::basis_state(const RegisterLayout &layout, BasisIndex index, Representation representation) {
    return from_amplitudes(layout, {{index, Amplitude{1.0, 0.0}}}, representation);
}

StateVector StateVector::from_amplitudes(const RegisterLayout &layout, std::vector<BasisAmplitude> terms,
                                         Representation representation) {
    StateVector state(layout, representation);
    const BasisIndex limit = bit_of(layout.num_qubits());
    for (const auto &t : terms) {
        if (t.index >= limit) {
            throw IndexError("basis index " + std::to_string(t.index) + " outside a " +
                             std::to_string(layout.num_qubits()) + "-qubit layout");
        }
    }
    if (representation == Representation::Sparse) {
        state.canonicalize(terms);
        state.sparse_ = std::move(terms);
    } else {
        for (const auto &t : terms) {
            state.dense_[t.index] += t.amplitude;
        }
    }
    const double norm = state.norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw DomainError("amplitudes have norm " + std::to_string(norm) + ", expected 1");
    }
    return state;
}

Amplitude StateVector::amplitude(BasisIndex index) const {
    if (representation_ == Representation::Dense) {
        return index < dense_.size() ? dense_[index] : Amplitude{};
    }
    auto it = std::lower_bound(sparse_.begin(), sparse_.end(), index,
                               [](const BasisAmplitude &e, BasisIndex i) { return e.index < i; });
    return (it != sparse_.end() && it->index == index) ? it->amplitude : Amplitude{};
}

std::vector<BasisAmplitude> StateVector::entries() const {
    if (representation_ == Representation::Sparse) {
        return sparse_;
    }
    std::vector<BasisAmplitude> out;
    for_each_nonzero([&](BasisIndex i, Amplitude a) { out.push_back({i, a}); });
    return out;
}

std::size_t StateVector::support_size() const {
    if (representation_ == Representation::Sparse) {
        return sparse_.size();
    }
    return static_cast<std::size_t>(
        std::count_if(dense_.begin(), dense_.end(), [](Amplitude a) { return a != Amplitude{}; }));
}

double StateVector::norm() const {
    double total = 0.0;
    for_each_nonzero([&](BasisIndex, Amplitude a) { total += std::norm(a); });
    return std::sqrt(total);
}

StateVector StateVector::to_representation(Representation representation) const {
    if (representation == representation_) {
        return *this;
    }
    StateVector out(layout_, representation);
    if (representation == Representation::Sparse) {
        auto terms = entries();
        out.canonicalize(terms);
        out.sparse_ = std::move(terms);
    } else {
        for (const auto &e : sparse_) {
            out.dense_[e.index] = e.amplitude;
        }
    }
    return out;
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= layout_.num_qubits()) {
        throw IndexError("qubit " + std::to_string(qubit) + " outside a " + std::to_string(layout_.num_qubits()) +
                         "-qubit layout");
    }
}

// Sorts by index, sums repeated indices and drops entries below the prune
// threshold.
void StateVector::canonicalize(std::vector<BasisAmplitude> &terms) {
    std::sort(terms.begin(), terms.end(),
              [](const BasisAmplitude &a, const BasisAmplitude &b) { return a.index < b.index; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        BasisAmplitude acc = terms[i];
        std::size_t j = i + 1;
        for (; j < terms.size() && terms[j].index == acc.index; ++j) {
            acc.amplitude += terms[j].amplitude;
        }
        if (std::abs(acc.amplitude) >= kPruneThreshold) {
            terms[out++] = acc;
        }
        i = j;
    }
    terms.resize(out);
}

template <class F> void StateVector::permute(F &&f) {
    if (representation_ == Representation::Sparse) {
        for (auto &e : sparse_) {
            e.index = f(e.index);
        }
        std::sort(sparse_.begin(), sparse_.end(),
                  [](const BasisAmplitude &a, const BasisAmplitude &b) { return a.index < b.index; });
    } else {
        std::vector<Amplitude> out(dense_.size());
        for (BasisIndex i = 0; i < dense_.size(); ++i) {
            out[f(i)] = dense_[i];
        }
        dense_ = std::move(out);
    }
}

template <class F> void StateVector::multiply_diagonal(F &&f) {
    if (representation_ == Representation::Sparse) {
        for (auto &e : sparse_) {
            e.amplitude *= f(e.index);
        }
    } else {
        for (BasisIndex i = 0; i < dense_.size(); ++i) {
            dense_[i] *= f(i);
        }
    }
}

void StateVector::apply_not(int qubit) {
    check_qubit(qubit);
    const BasisIndex flip = bit_of(qubit);
    permute([flip](BasisIndex i) { return i ^ flip; });
}

void StateVector::apply_xor(int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
        throw IndexError("XOR control and target must differ");
    }
    const BasisIndex c = bit_of(control);
    const BasisIndex t = bit_of(target);
    permute([c, t](BasisIndex i) { return (i & c) ? i ^ t : i; });
}

void StateVector::apply_hadamard(int qubit) {
    check_qubit(qubit);
    const BasisIndex bit = bit_of(qubit);
    const double r = 1.0 / std::numbers::sqrt2;
    if (representation_ == Representation::Sparse) {
        std::vector<BasisAmplitude> out;
        out.reserve(2 * sparse_.size());
        for (const auto &e : sparse_) {
            const BasisIndex low = e.index & ~bit;
            const Amplitude a = e.amplitude * r;
            out.push_back({low, a});
            out.push_back({low | bit, (e.index & bit) ? -a : a});
        }
        canonicalize(out);
        sparse_ = std::move(out);
    } else {
        for (BasisIndex i = 0; i < dense_.size(); ++i) {
            if (i & bit) {
                continue;
            }
            const Amplitude a0 = dense_[i];
            const Amplitude a1 = dense_[i | bit];
            dense_[i] = (a0 + a1) * r;
            dense_[i | bit] = (a0 - a1) * r;
        }
    }
}

void StateVector::apply_hamming_phase(int control) {
    check_qubit(control);
    if (!layout_.in_register(Register::Control, control)) {
        throw IndexError("hamming phase needs a control-register qubit, got qubit " + std::to_string(control));
    }
    const int n = layout_.memory_width();
    // phase[z] = exp(i pi z / 2n) for a control in |0>; conjugate for |1>.
    std::vector<Amplitude> phase(static_cast<std::size_t>(n) + 1);
    for (int z = 0; z <= n; ++z) {
        phase[static_cast<std::size_t>(z)] = std::polar(1.0, std::numbers::pi * z / (2.0 * n));
    }
    const BasisIndex c = bit_of(control);
    multiply_diagonal([&](BasisIndex i) {
        const int zeros = n - std::popcount(layout_.extract(Register::Memory, i));
        const Amplitude ph = phase[static_cast<std::size_t>(zeros)];
        return (i & c) ? std::conj(ph) : ph;
    });
}

void StateVector::apply_agreement_map(const BitPattern &input) {
    if (input.size() != layout_.memory_width()) {
        throw DimensionError("input has length " + std::to_string(input.size()) + " but memory register has " +
                             std::to_string(layout_.memory_width()) + " qubits");
    }
    // NOT_k XOR_{i_k m_k} flips memory bit k exactly when i_k = 0.
    const BasisIndex flips = layout_.place(Register::Memory, ~input.to_mask() & (layout_.mask(Register::Memory) >>
                                                                                 layout_.offset(Register::Memory)));
    permute([flips](BasisIndex i) { return i ^ flips; });
}

void StateVector::reflect_good_subspace(int branch) {
    if (!layout_.has(Register::Control)) {
        throw DimensionError("good-subspace reflection needs a control register");
    }
    if (branch != 0 && branch != 1) {
        throw DomainError("branch must be 0 or 1");
    }
    const BasisIndex cmask = layout_.mask(Register::Control);
    const BasisIndex target = branch == 0 ? 0 : cmask;
    multiply_diagonal([=](BasisIndex i) { return (i & cmask) == target ? -1.0 : 1.0; });
}

// ---------------------------------------------------------------------------
// Free functions

StateVector apply_not(StateVector state, int qubit) {
    state.apply_not(qubit);
    return state;
}

StateVector apply_xor(StateVector state, int control, int target) {
    state.apply_xor(control, target);
    return state;
}

StateVector apply_hadamard(StateVector state, int qubit) {
    state.apply_hadamard(qubit);
    return state;
}

StateVector apply_hamming_phase(StateVector state, int control) {
    state.apply_hamming_phase(control);
    return state;
}

StateVector reflect_good_subspace(StateVector state, int branch) {
    state.reflect_good_subspace(branch);
    return state;
}

StateVector linear_combination(Amplitude alpha, const StateVector &x, Amplitude beta, const StateVector &y) {
    check_same_layout(x, y);
    StateVector out(y.layout(), y.representation());
    if (y.representation() == Representation::Sparse) {
        std::vector<BasisAmplitude> terms;
        const auto xs = x.entries();
        terms.reserve(xs.size() + y.sparse_.size());
        for (const auto &e : xs) {
            terms.push_back({e.index, alpha * e.amplitude});
        }
        for (const auto &e : y.sparse_) {
            terms.push_back({e.index, beta * e.amplitude});
        }
        out.canonicalize(terms);
        out.sparse_ = std::move(terms);
    } else {
        for (BasisIndex i = 0; i < out.dense_.size(); ++i) {
            out.dense_[i] = beta * y.dense_[i];
        }
        x.for_each_nonzero([&](BasisIndex i, Amplitude a) { out.dense_[i] += alpha * a; });
    }
    return out;
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
    check_same_layout(a, b);
    Amplitude total{};
    a.for_each_nonzero([&](BasisIndex i, Amplitude amp) { total += std::conj(amp) * b.amplitude(i); });
    return total;
}

StateVector reflect_about_state(const StateVector &state, const StateVector &axis) {
    const Amplitude overlap = inner_product(axis, state);
    return linear_combination(2.0 * overlap, axis, Amplitude{-1.0, 0.0}, state);
}

int sample_qubit(const StateVector &state, int qubit, Rng &rng) {
    if (qubit < 0 || qubit >= state.layout().num_qubits()) {
        throw IndexError("qubit " + std::to_string(qubit) + " out of range");
    }
    const BasisIndex bit = bit_of(qubit);
    const double p1 = probability_of_subspace(state, [bit](BasisIndex i) { return (i & bit) != 0; });
    return uniform_unit(rng) < p1 ? 1 : 0;
}

QubitMeasurement measure_qubit(const StateVector &state, int qubit, Rng &rng) {
    const int outcome = sample_qubit(state, qubit, rng);
    const BasisIndex bit = bit_of(qubit);
    auto keep = [bit, outcome](BasisIndex i) { return ((i & bit) != 0) == (outcome == 1); };
    StateVector collapsed = state;
    collapsed.collapse(keep, probability_of_subspace(state, keep));
    return {outcome, std::move(collapsed)};
}

RegisterMeasurement measure_register(const StateVector &state, Register r, Rng &rng) {
    const auto &layout = state.layout();
    if (!layout.has(r)) {
        throw DimensionError("layout has no " + std::string(to_string(r)) + " register");
    }
    std::map<std::uint64_t, double> marginal;
    double total = 0.0;
    state.for_each_nonzero([&](BasisIndex i, Amplitude a) {
        marginal[layout.extract(r, i)] += std::norm(a);
        total += std::norm(a);
    });
    const double u = uniform_unit(rng) * total;
    double acc = 0.0;
    std::uint64_t value = marginal.rbegin()->first;
    for (const auto &[v, prob] : marginal) {
        acc += prob;
        if (u < acc) {
            value = v;
            break;
        }
    }
    StateVector collapsed = state;
    collapsed.collapse([&](BasisIndex i) { return layout.extract(r, i) == value; }, marginal[value]);
    return {value, BitPattern::from_mask(value, layout.width(r)), std::move(collapsed)};
}

BornSampler::BornSampler(const StateVector &state) {
    double acc = 0.0;
    state.for_each_nonzero([&](BasisIndex i, Amplitude a) {
        acc += std::norm(a);
        indices_.push_back(i);
        cumulative_.push_back(acc);
    });
    if (indices_.empty()) {
        throw DomainError("cannot sample from an empty state");
    }
}

BasisIndex BornSampler::sample(Rng &rng) const {
    const double u = uniform_unit(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) {
        --it;
    }
    return indices_[static_cast<std::size_t>(it - cumulative_.begin())];
}

} // namespace mirrorqam
