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

#include "mirrorqam/patterns.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mirrorqam/errors.hpp"

namespace mirrorqam {

BitPattern::BitPattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        throw DimensionError("bit pattern must have at least one bit");
    }
    for (auto bit : bits_) {
        if (bit > 1) {
            throw DomainError("bit pattern entries must be 0 or 1");
        }
    }
}

BitPattern BitPattern::parse(std::string_view text) {
    if (text.empty()) {
        throw ParseError(ParseError::Kind::EmptySet, 0, "empty bit pattern");
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t j = 0; j < text.size(); ++j) {
        const char c = text[j];
        if (c != '0' && c != '1') {
            throw ParseError(ParseError::Kind::NonBinaryCharacter, 0,
                             "non-binary character '" + std::string(1, c) + "' at column " +
                                 std::to_string(j + 1));
        }
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BitPattern(std::move(bits));
}

BitPattern BitPattern::from_mask(std::uint64_t mask, int width) {
    if (width < 1 || width > 64) {
        throw DimensionError("pattern width must be in [1, 64]");
    }
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(width));
    for (int j = 0; j < width; ++j) {
        bits[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((mask >> j) & 1U);
    }
    return BitPattern(std::move(bits));
}

std::uint64_t BitPattern::to_mask() const {
    if (bits_.size() > 64) {
        throw DimensionError("pattern wider than 64 bits cannot be packed");
    }
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < bits_.size(); ++j) {
        mask |= static_cast<std::uint64_t>(bits_[j]) << j;
    }
    return mask;
}

std::string BitPattern::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto bit : bits_) {
        s.push_back(static_cast<char>('0' + bit));
    }
    return s;
}

std::ostream &operator<<(std::ostream &os, const BitPattern &pattern) { return os << pattern.to_string(); }

int hamming_distance(const BitPattern &a, const BitPattern &b) {
    if (a.size() != b.size()) {
        throw DimensionError("hamming distance of patterns with lengths " + std::to_string(a.size()) +
                             " and " + std::to_string(b.size()));
    }
    int d = 0;
    for (int j = 0; j < a.size(); ++j) {
        d += a[j] != b[j];
    }
    return d;
}

BitPattern mirror(const BitPattern &a) {
    std::vector<std::uint8_t> bits(a.bits());
    for (auto &bit : bits) {
        bit ^= 1U;
    }
    return BitPattern(std::move(bits));
}

PatternSet::PatternSet(std::vector<BitPattern> patterns) : patterns_(std::move(patterns)) {
    if (patterns_.empty()) {
        throw DomainError("pattern set must hold at least one pattern");
    }
    n_ = patterns_.front().size();
    std::set<BitPattern> seen;
    for (const auto &pattern : patterns_) {
        if (pattern.size() != n_) {
            throw DimensionError("pattern " + pattern.to_string() + " has length " +
                                 std::to_string(pattern.size()) + ", expected " + std::to_string(n_));
        }
        if (!seen.insert(pattern).second) {
            throw DomainError("duplicate pattern " + pattern.to_string());
        }
    }
}

bool PatternSet::contains(const BitPattern &pattern) const {
    for (const auto &stored : patterns_) {
        if (stored == pattern) {
            return true;
        }
    }
    return false;
}

PatternSet mirror_set(const PatternSet &s) {
    std::vector<BitPattern> mirrored;
    mirrored.reserve(static_cast<std::size_t>(s.p()));
    for (const auto &pattern : s) {
        mirrored.push_back(mirror(pattern));
    }
    return PatternSet(std::move(mirrored));
}

PatternSet parse_pattern_file(std::istream &in) {
    std::vector<BitPattern> patterns;
    std::map<std::string, std::size_t> first_seen;
    std::size_t width = 0;
    std::size_t width_line = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') {
            continue;
        }
        for (std::size_t j = 0; j < line.size(); ++j) {
            if (line[j] != '0' && line[j] != '1') {
                throw ParseError(ParseError::Kind::NonBinaryCharacter, line_no,
                                 "line " + std::to_string(line_no) + ": non-binary character '" +
                                     std::string(1, line[j]) + "' at column " + std::to_string(j + 1));
            }
        }
        if (width == 0) {
            width = line.size();
            width_line = line_no;
        } else if (line.size() != width) {
            throw ParseError(ParseError::Kind::RaggedLength, line_no,
                             "line " + std::to_string(line_no) + ": pattern has length " +
                                 std::to_string(line.size()) + " but line " + std::to_string(width_line) +
                                 " has length " + std::to_string(width));
        }
        auto [it, inserted] = first_seen.emplace(line, line_no);
        if (!inserted) {
            throw ParseError(ParseError::Kind::DuplicatePattern, line_no,
                             "line " + std::to_string(line_no) + ": duplicate pattern " + line +
                                 " (first seen on line " + std::to_string(it->second) + ")");
        }
        patterns.push_back(BitPattern::parse(line));
    }
    if (patterns.empty()) {
        throw ParseError(ParseError::Kind::EmptySet, 0, "pattern file contains no patterns");
    }
    return PatternSet(std::move(patterns));
}

PatternSet parse_pattern_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_pattern_file(in);
}

PatternSet load_pattern_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(ParseError::Kind::EmptySet, 0, "cannot open pattern file '" + path + "'");
    }
    return parse_pattern_file(in);
}

BitPattern random_pattern(int n, std::mt19937_64 &rng) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
    for (auto &bit : bits) {
        bit = static_cast<std::uint8_t>(rng() >> 63);
    }
    return BitPattern(std::move(bits));
}

PatternSet random_pattern_set(int n, int p, std::mt19937_64 &rng) {
    if (n < 1 || p < 1 || (n < 63 && static_cast<std::uint64_t>(p) > (std::uint64_t{1} << n))) {
        throw DomainError("cannot draw " + std::to_string(p) + " distinct patterns of length " +
                          std::to_string(n));
    }
    std::set<BitPattern> seen;
    std::vector<BitPattern> patterns;
    while (static_cast<int>(patterns.size()) < p) {
        auto candidate = random_pattern(n, rng);
        if (seen.insert(candidate).second) {
            patterns.push_back(std::move(candidate));
        }
    }
    return PatternSet(std::move(patterns));
}

} // namespace mirrorqam
