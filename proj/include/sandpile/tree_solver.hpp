// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sandpile/graph.hpp"
#include "sandpile/keypair_store.hpp"
#include "sandpile/result.hpp"

namespace sandpile {

/// Solver state indexed by slot: vertices renumbered in breadth-first order from
/// the root, neighbors taken in ascending id. Slot 0 is the root and the children
/// of slot u are the consecutive slots child_begin[u] .. child_begin[u+1].
struct TreeSolveState {
    Vertex root = 0;                       // original id of the root
    std::vector<Vertex> vertex;            // slot -> original id
    std::vector<Vertex> slot;              // original id -> slot
    Configuration sigma_prime;
    FiringVector c_down;
    FiringVector c;
    std::vector<std::int32_t> dfs_order;   // preorder timestamps 1..n, later slots first among siblings
    std::vector<Vertex> parent;            // parent[0] == 0
    std::vector<std::uint32_t> child_begin;

    std::size_t child_count(Vertex u) const { return child_begin[u + 1] - child_begin[u]; }
};

/// Hooks into the two passes, used by the audit tests. Arguments are slots.
struct TreeSolveObserver {
    std::function<void(Vertex u, Vertex v)> before_merge;
    std::function<void(Vertex u, Vertex v)> after_split;
    std::function<void(Vertex u)> before_compute;  // D_u holds the children's union
    std::function<void(Vertex u)> after_update;    // D_u holds u's key pairs
    std::function<void(Vertex u)> after_revert;
};

class TreeSolver {
public:
    /// tree must be a tree without sink edges.
    TreeSolver(const Graph& tree, const Configuration& sigma, Vertex root = 0);

    void solve_partial(const TreeSolveObserver& observer = {});
    void solve_complete(const TreeSolveObserver& observer = {});
    /// Terminal configuration recovered from c.
    StabilizationResult result() const;

    const TreeSolveState& state() const noexcept { return state_; }
    /// Per-slot stores.
    KeyPairStore& store() noexcept { return store_; }

private:
    Chips degree(Vertex s) const { return static_cast<Chips>(state_.child_count(s) + (s != 0)); }

    Configuration sigma_;  // by slot
    TreeSolveState state_;
    KeyPairStore store_;
};

/// Recurrent iff the chip total exceeds n - 2; otherwise both passes run.
StabilizationResult solve_tree(const Graph& tree, const Configuration& sigma, Vertex root = 0);

}  // namespace sandpile
