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

#include <compare>
#include <cstdint>
#include <istream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace mirrorqam {

/**
 * An ordered binary string of length n >= 1.
 *
 * Position 0 is the leftmost character of the textual form and corresponds
 * to qubit 1 of whatever register the pattern is loaded into.
 */
class BitPattern {
  public:
    explicit BitPattern(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1'. Throws ParseError on any other character
    /// or on an empty string.
    static BitPattern parse(std::string_view text);

    /// Bits are read from the low end of `mask`: bit j of the mask becomes
    /// position j of the pattern.
    static BitPattern from_mask(std::uint64_t mask, int width);

    int size() const noexcept { return static_cast<int>(bits_.size()); }
    std::uint8_t operator[](int j) const { return bits_[static_cast<std::size_t>(j)]; }
    const std::vector<std::uint8_t> &bits() const noexcept { return bits_; }

    /// Inverse of from_mask. Requires size() <= 64.
    std::uint64_t to_mask() const;

    std::string to_string() const;

    friend bool operator==(const BitPattern &, const BitPattern &) = default;
    friend auto operator<=>(const BitPattern &, const BitPattern &) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

std::ostream &operator<<(std::ostream &os, const BitPattern &pattern);

/// Number of positions at which `a` and `b` differ.
int hamming_distance(const BitPattern &a, const BitPattern &b);

/// Bitwise complement.
BitPattern mirror(const BitPattern &a);

/// p >= 1 pairwise-distinct patterns of a common length n, in insertion order.
class PatternSet {
  public:
    /// Throws DimensionError on ragged lengths and DomainError on duplicates
    /// or an empty list.
    explicit PatternSet(std::vector<BitPattern> patterns);

    int n() const noexcept { return n_; }
    int p() const noexcept { return static_cast<int>(patterns_.size()); }

    const std::vector<BitPattern> &patterns() const noexcept { return patterns_; }
    const BitPattern &operator[](int i) const { return patterns_[static_cast<std::size_t>(i)]; }
    auto begin() const { return patterns_.begin(); }
    auto end() const { return patterns_.end(); }

    bool contains(const BitPattern &pattern) const;

  private:
    std::vector<BitPattern> patterns_;
    int n_ = 0;
};

PatternSet mirror_set(const PatternSet &s);

/**
 * Reads the pattern file format: one pattern per line made of '0'/'1',
 * blank lines and lines whose first character is '#' are skipped, a trailing
 * '\r' is tolerated. Non-binary characters, ragged lengths, duplicates and an
 * empty result each raise a ParseError of a distinct kind.
 */
PatternSet parse_pattern_file(std::istream &in);
PatternSet parse_pattern_text(std::string_view text);
PatternSet load_pattern_file(const std::string &path);

/// p distinct patterns drawn uniformly from {0,1}^n. Requires p <= 2^n.
PatternSet random_pattern_set(int n, int p, std::mt19937_64 &rng);
BitPattern random_pattern(int n, std::mt19937_64 &rng);

} // namespace mirrorqam
