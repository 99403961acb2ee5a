// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "sandpile/graph.hpp"
#include "sandpile/result.hpp"

namespace sandpile {

enum class FiringOrder { LowestId, Random, HighestChips };

struct OracleOptions {
    /// Defaults to n^4 + 1 without sinks and unlimited with sinks.
    std::optional<std::uint64_t> firing_cap;
    FiringOrder order = FiringOrder::LowestId;
    std::uint64_t seed = 0;
    /// Tree shortcut: recurrent iff the chip total exceeds n - 2.
    bool tree_precheck = false;
    /// Without sinks, a game in which every vertex has fired never ends.
    bool all_fired_certificate = true;
};

using OracleResult = StabilizationResult;

/// Fires u once. Chips sent to sinks or along sink edges vanish.
Configuration fire(const Configuration& config, Vertex u, const Graph& graph,
                   std::span<const Vertex> sinks = {});

OracleResult stabilize_naive(const SandpileInstance& instance, const OracleOptions& options = {});

/// Fires only vertices of subset until none of them is full.
std::pair<Configuration, FiringVector> local_stabilize(const SandpileInstance& instance,
                                                       std::span<const Vertex> subset);

/// Chips delivered to parent(u) after adding x chips at u and restabilizing
/// the subtree of u (tree rooted at root). config must be local terminal there.
Chips delta_bruteforce(const Graph& tree, Vertex root, const Configuration& config, Vertex u,
                       Chips x);

}  // namespace sandpile
