// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sandpile/checked.hpp"

namespace sandpile {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
using Configuration = std::vector<Chips>;
using FiringVector = std::vector<Chips>;

/// Undirected simple graph in compressed adjacency form. Edges toward the
/// merged sink are kept only as a per-vertex multiplicity.
class Graph {
public:
    Graph() = default;

    std::size_t vertex_count() const noexcept { return sink_mult_.size(); }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    /// Neighbors in ascending id order.
    std::span<const Vertex> neighbors(Vertex v) const noexcept {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::uint32_t adjacency_size(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    const std::uint32_t* offsets_data() const noexcept { return offsets_.data(); }
    std::uint32_t sink_multiplicity(Vertex v) const noexcept { return sink_mult_[v]; }
    Chips degree(Vertex v) const noexcept {
        return Chips{adjacency_size(v)} + Chips{sink_mult_[v]};
    }
    bool has_sink_edges() const noexcept;
    bool has_edge(Vertex u, Vertex v) const noexcept;
    std::vector<Edge> edges() const;

    friend Graph build_graph(std::size_t n, std::span<const Edge> edges,
                             std::vector<std::uint32_t> sink_multiplicity);

private:
    std::vector<std::uint32_t> offsets_{0};
    std::vector<Vertex> targets_;
    std::vector<std::uint32_t> sink_mult_;
};

/// Builds a graph from 0-based edges. Rejects self-loops, duplicates and ids
/// outside [0, n).
Graph build_graph(std::size_t n, std::span<const Edge> edges,
                  std::vector<std::uint32_t> sink_multiplicity = {});

struct SandpileInstance {
    Graph graph;
    Configuration config;
    std::vector<Vertex> sinks;  // sorted, explicit sink vertices

    std::size_t size() const noexcept { return graph.vertex_count(); }
    bool is_sink(Vertex v) const noexcept;
    /// True if there is an explicit sink or a merged-sink edge.
    bool has_sink() const noexcept { return !sinks.empty() || graph.has_sink_edges(); }
};

/// Instance with all sinks folded into multiplicities, plus the original id of
/// every remaining vertex.
struct MergedInstance {
    SandpileInstance instance;
    std::vector<Vertex> original;
};

MergedInstance merge_sinks(const SandpileInstance& instance);

/// Connectivity, chip signs, sink ids and the chip total limit.
void validate_instance(const SandpileInstance& instance);

bool is_connected(const Graph& g);
bool is_tree(const Graph& g);
/// Vertex order along the path if g is a simple path, else empty.
std::vector<Vertex> path_order(const Graph& g);
bool is_clique(const Graph& g);
bool is_pseudotree(const Graph& g);

Chips total_chips(std::span<const Chips> config);

/// sigma + sum of c(v) F(v): the configuration reached after the given firings.
/// Chips sent to sinks vanish; sink entries keep their initial value.
Configuration apply_firings(const SandpileInstance& instance, std::span<const Chips> firings);

/// True if no non-sink vertex is full.
bool is_terminal(const SandpileInstance& instance, std::span<const Chips> config);

}  // namespace sandpile
