// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sandpile {

enum class ErrorCode {
    DuplicateEdge,
    SelfLoop,
    VertexOutOfRange,
    NoSink,
    Disconnected,
    NegativeChips,
    BadSink,
    MalformedInstance,
    ChipLimitExceeded,
    NotFull,
    IsSink,
    CapExceededWithSinks,
    NotLocalTerminal,
    ArithmeticOverflow,
    EmptyStore,
    InvariantViolation,
    NotATree,
    NotAPath,
    NotAClique,
    NotPseudotree,
    ParseError,
    SolverMismatch,
    TooLargeForOracle,
    BadFamilyParams,
};

std::string_view error_name(ErrorCode code) noexcept;

class SandpileError : public std::runtime_error {
public:
    SandpileError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw SandpileError(code, what);
}

}  // namespace sandpile
