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
#include <cmath>
#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "mirrorqam/patterns.hpp"
#include "mirrorqam/random.hpp"

namespace mirrorqam {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;

/// Entries with magnitude below this are dropped from sparse states.
inline constexpr double kPruneThreshold = 1e-14;
/// Allowed deviation of the norm from one for a state to count as normalized.
inline constexpr double kNormTolerance = 1e-10;
/// Largest register a dense state will allocate.
inline constexpr int kMaxDenseQubits = 26;

/// Named registers, listed in the order they are packed into a basis index.
enum class Register { Input, Memory, Clone, Control, Ancilla };

std::string_view to_string(Register r);

/**
 * Qubit bookkeeping for the composite register.
 *
 * Registers are packed little-endian into a basis index in the order
 * Input, Memory, Clone, Control, Ancilla, skipping absent ones: qubit k
 * (0-based) of register r is bit `offset(r) + k`. A pattern loaded into a
 * register puts its leftmost character on qubit 0 of that register.
 *
 * The input register is normally held classically by the caller (it stays
 * in a basis state throughout retrieval); set `quantum_input` to simulate it
 * for cross-checks. The clone register is the second copy written by the
 * cloning map.
 */
class RegisterLayout {
  public:
    struct Options {
        bool quantum_input = false;
        bool clone_register = false;
        bool ancilla = true;
    };

    RegisterLayout(int memory_width, int control_width, Options options);
    RegisterLayout(int memory_width, int control_width) : RegisterLayout(memory_width, control_width, Options{}) {}

    /// Memory (n) + controls (b) + ancilla, optionally with a simulated input.
    static RegisterLayout retrieval(int n, int b, bool quantum_input = false);
    /// Memory (n) + clone (n) + ancilla, no controls.
    static RegisterLayout cloning(int n);

    int memory_width() const noexcept { return width(Register::Memory); }
    int control_width() const noexcept { return width(Register::Control); }
    int num_qubits() const noexcept { return num_qubits_; }

    bool has(Register r) const noexcept { return width(r) > 0; }
    int width(Register r) const noexcept { return widths_[static_cast<std::size_t>(r)]; }
    int offset(Register r) const noexcept { return offsets_[static_cast<std::size_t>(r)]; }

    /// Global qubit index of qubit `k` of register `r`. Throws IndexError.
    int qubit(Register r, int k) const;
    bool in_register(Register r, int qubit) const noexcept;

    BasisIndex mask(Register r) const noexcept;
    /// Value of register `r` inside `index`, shifted down to bit 0.
    std::uint64_t extract(Register r, BasisIndex index) const noexcept;
    /// `value` shifted into register `r`'s bit range.
    BasisIndex place(Register r, std::uint64_t value) const;

    friend bool operator==(const RegisterLayout &, const RegisterLayout &) = default;

  private:
    std::array<int, 5> widths_{};
    std::array<int, 5> offsets_{};
    int num_qubits_ = 0;
};

enum class Representation { Sparse, Dense };

std::string_view to_string(Representation r);

struct BasisAmplitude {
    BasisIndex index;
    Amplitude amplitude;
};

/**
 * Complex amplitudes over a RegisterLayout.
 *
 * Sparse states keep a sorted list of (index, amplitude) with no entry below
 * kPruneThreshold; dense states keep all 2^q amplitudes. Both produce the
 * same results to rounding. Iteration is always in ascending index order, so
 * every reduction is sequential and reproducible.
 *
 * The in-place gate members mutate the state; the free functions of the same
 * names take a state by value and return the transformed copy.
 */
class StateVector {
  public:
    static StateVector basis_state(const RegisterLayout &layout, BasisIndex index,
                                   Representation representation = Representation::Sparse);

    /// Builds a state from (index, amplitude) terms; repeated indices are
    /// summed. Throws DomainError unless the result is normalized within
    /// kNormTolerance.
    static StateVector from_amplitudes(const RegisterLayout &layout, std::vector<BasisAmplitude> terms,
                                       Representation representation = Representation::Sparse);

    const RegisterLayout &layout() const noexcept { return layout_; }
    Representation representation() const noexcept { return representation_; }

    Amplitude amplitude(BasisIndex index) const;
    /// Nonzero amplitudes in ascending index order.
    std::vector<BasisAmplitude> entries() const;
    std::size_t support_size() const;
    double norm() const;

    StateVector to_representation(Representation representation) const;

    template <class F> void for_each_nonzero(F &&f) const {
        if (representation_ == Representation::Sparse) {
            for (const auto &e : sparse_) {
                f(e.index, e.amplitude);
            }
        } else {
            for (BasisIndex i = 0; i < dense_.size(); ++i) {
                if (dense_[i] != Amplitude{}) {
                    f(i, dense_[i]);
                }
            }
        }
    }

    void apply_not(int qubit);
    /// NOT on `target` where `control` is 1.
    void apply_xor(int control, int target);
    void apply_hadamard(int qubit);
    /// exp(i pi z s / 2n): z counts 0-bits of the memory register, s is +1
    /// when `control` is 0 and -1 when it is 1.
    void apply_hamming_phase(int control);
    /// Classically conditioned NOT on every memory qubit, then NOT on every
    /// memory qubit: memory bit k becomes 1 iff it agrees with pattern bit k.
    void apply_agreement_map(const BitPattern &input);
    /// Negates amplitudes whose control register is all `branch`.
    void reflect_good_subspace(int branch);

    /// Keeps the amplitudes accepted by `keep` and rescales by
    /// 1/sqrt(probability). `probability` must be the kept Born mass.
    template <class Pred> void collapse(Pred &&keep, double probability);

  private:
    StateVector(RegisterLayout layout, Representation representation);

    void check_qubit(int qubit) const;
    void canonicalize(std::vector<BasisAmplitude> &terms);
    template <class F> void permute(F &&f);
    template <class F> void multiply_diagonal(F &&f);

    friend StateVector linear_combination(Amplitude alpha, const StateVector &x, Amplitude beta,
                                          const StateVector &y);

    RegisterLayout layout_;
    Representation representation_;
    std::vector<BasisAmplitude> sparse_;
    std::vector<Amplitude> dense_;
};

template <class Pred> void StateVector::collapse(Pred &&keep, double probability) {
    const double scale = 1.0 / std::sqrt(probability);
    if (representation_ == Representation::Sparse) {
        std::vector<BasisAmplitude> kept;
        for (const auto &e : sparse_) {
            if (keep(e.index)) {
                kept.push_back({e.index, e.amplitude * scale});
            }
        }
        sparse_ = std::move(kept);
    } else {
        for (BasisIndex i = 0; i < dense_.size(); ++i) {
            dense_[i] = keep(i) ? dense_[i] * scale : Amplitude{};
        }
    }
}

StateVector apply_not(StateVector state, int qubit);
StateVector apply_xor(StateVector state, int control, int target);
StateVector apply_hadamard(StateVector state, int qubit);
StateVector apply_hamming_phase(StateVector state, int control);

/// alpha*x + beta*y in y's representation. Throws DimensionError on layout mismatch.
StateVector linear_combination(Amplitude alpha, const StateVector &x, Amplitude beta, const StateVector &y);

/// <a|b>. Throws DimensionError on layout mismatch.
Amplitude inner_product(const StateVector &a, const StateVector &b);

/// 2<axis|state> axis - state.
StateVector reflect_about_state(const StateVector &state, const StateVector &axis);
StateVector reflect_good_subspace(StateVector state, int branch);

/// Sum of |amplitude|^2 over basis indices accepted by `pred`.
template <class Pred> double probability_of_subspace(const StateVector &state, Pred &&pred) {
    double total = 0.0;
    state.for_each_nonzero([&](BasisIndex i, Amplitude a) {
        if (pred(i)) {
            total += std::norm(a);
        }
    });
    return total;
}

struct QubitMeasurement {
    int bit;
    StateVector state;
};

struct RegisterMeasurement {
    std::uint64_t value;
    BitPattern pattern;
    StateVector state;
};

/// Born-rule outcome for one qubit without collapsing.
int sample_qubit(const StateVector &state, int qubit, Rng &rng);
QubitMeasurement measure_qubit(const StateVector &state, int qubit, Rng &rng);
RegisterMeasurement measure_register(const StateVector &state, Register r, Rng &rng);

/// Precomputed cumulative distribution over a state's basis indices, for
/// drawing many joint samples of every qubit at O(log support) each.
class BornSampler {
  public:
    explicit BornSampler(const StateVector &state);
    BasisIndex sample(Rng &rng) const;

  private:
    std::vector<BasisIndex> indices_;
    std::vector<double> cumulative_;
};

} // namespace mirrorqam
