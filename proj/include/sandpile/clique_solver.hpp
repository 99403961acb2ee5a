// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "sandpile/graph.hpp"
#include "sandpile/result.hpp"

namespace sandpile {

/// Complete graph K_n, n >= 2.
StabilizationResult solve_clique(std::size_t n, const Configuration& sigma);

}  // namespace sandpile
