// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <vector>

#include "sandpile/generators.hpp"
#include "sandpile/graph.hpp"

namespace sandpile::testing {

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline SandpileInstance no_sink(Graph g, Configuration config) {
    return SandpileInstance{std::move(g), std::move(config), {}};
}

/// Random connected graph on n vertices with one random sink and up to
/// max_chips chips on the other vertices.
inline SandpileInstance random_sink_instance(Rng& rng, std::size_t n, Chips max_chips) {
    const std::size_t max_m = std::min(n * (n - 1) / 2, 3 * n);
    Graph g = random_connected(n, uniform(rng, n - 1, std::max(n - 1, max_m)), rng);
    const auto sink = static_cast<Vertex>(uniform(rng, 0, n - 1));
    Configuration config(n, 0);
    const Chips total = static_cast<Chips>(uniform(rng, 0, static_cast<std::size_t>(max_chips)));
    Configuration spread = random_config(n - 1, total, rng);
    for (Vertex v = 0, i = 0; v < n; ++v) {
        if (v != sink) config[v] = spread[i++];
    }
    return SandpileInstance{std::move(g), std::move(config), {sink}};
}

/// Vertices of the subtree of u when the tree is rooted at root.
inline std::vector<Vertex> subtree(const Graph& tree, Vertex root, Vertex u) {
    std::vector<Vertex> parent(tree.vertex_count(), root);
    std::vector<Vertex> order{root};
    std::vector<std::uint8_t> seen(tree.vertex_count(), 0);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Vertex w : tree.neighbors(order[i])) {
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[i];
                order.push_back(w);
            }
        }
    }
    std::vector<Vertex> out{u};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (Vertex w : tree.neighbors(out[i])) {
            if (w != parent[out[i]]) out.push_back(w);
        }
    }
    return out;
}

}  // namespace sandpile::testing
