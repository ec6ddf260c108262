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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mirrorqam {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed pattern text. `line()` is 1-based; 0 means "whole input".
class ParseError : public Error {
  public:
    enum class Kind { NonBinaryCharacter, RaggedLength, DuplicatePattern, EmptySet };

    ParseError(Kind kind, std::size_t line, const std::string &what)
        : Error(what), kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

  private:
    Kind kind_;
    std::size_t line_;
};

/// Register widths or pattern lengths that do not line up.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Qubit index outside the layout.
class IndexError : public Error {
  public:
    using Error::Error;
};

/// A value violates a documented precondition (duplicate patterns,
/// efficiencies not summing to one, negative counts, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Every stored pattern has vanishing cos^{2b} weight for the given input,
/// so the good subspace is empty and retrieval cannot succeed.
class ZeroMassError : public Error {
  public:
    using Error::Error;
};

/// <M|Mbar> = 0: the efficiency condition divides by zero.
class SingularOverlapError : public Error {
  public:
    using Error::Error;
};

/// A retrieval asked for cloning efficiencies that have no real solution.
class InfeasibleCloningError : public Error {
  public:
    using Error::Error;
};

} // namespace mirrorqam
