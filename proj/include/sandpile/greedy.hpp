// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

#include "sandpile/graph.hpp"

namespace sandpile {

struct GreedyTraceRow {
    Vertex vertex;
    Chips k;
    Chips remaining;  // chips left on non-sink vertices after the batch
};

using GreedyTrace = std::function<void(const GreedyTraceRow&)>;

struct GreedyOptions {
    GreedyTrace trace;
    /// When false, firings stays empty. Firing numbers grow like N times the
    /// distance to the sink and can leave the 64-bit range long before the
    /// chip counts do.
    bool track_firings = true;
};

struct GreedyResult {
    Configuration config;
    FiringVector firings;  // empty when not tracked
    std::uint64_t iterations = 0;
    Chips absorbed = 0;
};

/// Repeatedly fires the vertex with the largest floor(chips / degree), all
/// those firings in one batch, ties to the lowest id. Explicit sinks are
/// merged first; results are reported on the original vertex ids, with sink
/// entries left untouched.
GreedyResult stabilize_greedy(const SandpileInstance& instance, const GreedyOptions& options);
inline GreedyResult stabilize_greedy(const SandpileInstance& instance, const GreedyTrace& trace = {}) {
    return stabilize_greedy(instance, GreedyOptions{trace, true});
}

}  // namespace sandpile
