// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "sandpile/error.hpp"

namespace sandpile {

using Chips = std::int64_t;

/// Inputs whose total chip count reaches this value are rejected.
inline constexpr Chips kChipLimit = Chips{1} << 62;

inline Chips checked_add(Chips a, Chips b) {
    Chips r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::ArithmeticOverflow, "addition");
    return r;
}

inline Chips checked_sub(Chips a, Chips b) {
    Chips r;
    if (__builtin_sub_overflow(a, b, &r)) fail(ErrorCode::ArithmeticOverflow, "subtraction");
    return r;
}

inline Chips checked_mul(Chips a, Chips b) {
    Chips r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::ArithmeticOverflow, "multiplication");
    return r;
}

}  // namespace sandpile
