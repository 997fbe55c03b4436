// Copyright 2026 The svhmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SVHMC_ERRORS_HPP
#define SVHMC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svhmc {

/// Base of every error raised by the library. `kind()` is a short stable tag
/// used by the CLI for its machine-parseable error prefix.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// A caller broke a documented precondition.
class ContractViolation : public Error {
public:
    explicit ContractViolation(const std::string& what) : Error("contract", what) {}
};

/// exp(-h_t) left the representable range, or a log-density became non-finite.
class NumericalRangeError : public Error {
public:
    NumericalRangeError(std::size_t index, const std::string& what)
        : Error("numerical-range", what), index_(index) {}
    /// Zero-based site index that triggered the failure.
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// The sigma_eta^2 conditional collapses (A == 0).
class DegeneratePosteriorError : public Error {
public:
    explicit DegeneratePosteriorError(const std::string& what) : Error("degenerate-posterior", what) {}
};

/// The Gaussian phi proposal has no valid variance (D <= 0).
class ProposalUndefinedError : public Error {
public:
    explicit ProposalUndefinedError(const std::string& what) : Error("proposal-undefined", what) {}
};

/// A trace has zero variance so its autocorrelation is undefined.
class DegenerateTraceError : public Error {
public:
    explicit DegenerateTraceError(const std::string& what) : Error("degenerate-trace", what) {}
};

/// The self-consistent tau_int window did not close within the supplied lags.
class InsufficientLagsError : public Error {
public:
    explicit InsufficientLagsError(const std::string& what) : Error("insufficient-lags", what) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("parse", "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace svhmc

#endif  // SVHMC_ERRORS_HPP
