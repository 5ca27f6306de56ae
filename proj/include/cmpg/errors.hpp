/*
 * Copyright 2026 The cmpg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmpg {

/// Malformed input text. Carries the 1-based line number.
class ParseError : public std::runtime_error
{
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// A structurally well-formed object that violates a model invariant.
class ValidationError : public std::runtime_error
{
  public:
    enum class Kind {
        EmptyActionSet,
        DistributionSum,
        NonPositiveWeight,
        RewardOutOfRange,
        MissingTransition,
        DuplicateName,
        UnknownName,
        BadStrategy,
        BadDmpg,
    };

    ValidationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

/// An internal cross-check failed: some theorem-backed guarantee did not hold.
class ConsistencyError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// An enumeration or iteration would exceed its configured budget.
class BoundExceeded : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace cmpg
