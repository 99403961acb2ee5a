// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "sandpile/graph.hpp"
#include "sandpile/result.hpp"

namespace sandpile {

/// Path on vertices 0..n-1 with edges (i, i+1), rooted at vertex 0.
StabilizationResult solve_path(std::size_t n, const Configuration& sigma);

/// Any graph that is a simple path, relabelled along the path.
StabilizationResult solve_path_graph(const Graph& graph, const Configuration& sigma);

}  // namespace sandpile
