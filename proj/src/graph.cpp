// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/graph.hpp"

#include <algorithm>
#include <string>

#include "sandpile/error.hpp"

namespace sandpile {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::NoSink: return "NoSink";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::NegativeChips: return "NegativeChips";
        case ErrorCode::BadSink: return "BadSink";
        case ErrorCode::MalformedInstance: return "MalformedInstance";
        case ErrorCode::ChipLimitExceeded: return "ChipLimitExceeded";
        case ErrorCode::NotFull: return "NotFull";
        case ErrorCode::IsSink: return "IsSink";
        case ErrorCode::CapExceededWithSinks: return "CapExceededWithSinks";
        case ErrorCode::NotLocalTerminal: return "NotLocalTerminal";
        case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
        case ErrorCode::EmptyStore: return "EmptyStore";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::NotATree: return "NotATree";
        case ErrorCode::NotAPath: return "NotAPath";
        case ErrorCode::NotAClique: return "NotAClique";
        case ErrorCode::NotPseudotree: return "NotPseudotree";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SolverMismatch: return "SolverMismatch";
        case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
        case ErrorCode::BadFamilyParams: return "BadFamilyParams";
    }
    return "Unknown";
}

Graph build_graph(std::size_t n, std::span<const Edge> edges,
                  std::vector<std::uint32_t> sink_multiplicity) {
    if (sink_multiplicity.empty()) sink_multiplicity.assign(n, 0);
    if (sink_multiplicity.size() != n) fail(ErrorCode::VertexOutOfRange, "multiplicity size");

    std::vector<std::uint32_t> deg(n + 1, 0);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            fail(ErrorCode::VertexOutOfRange,
                 "edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
        }
        if (u == v) fail(ErrorCode::SelfLoop, "vertex " + std::to_string(u + 1));
        ++deg[u];
        ++deg[v];
    }
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.targets_.resize(g.offsets_[n]);
    std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.targets_[fill[u]++] = v;
        g.targets_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto first = g.targets_.begin() + g.offsets_[v];
        auto last = g.targets_.begin() + g.offsets_[v + 1];
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last) {
            fail(ErrorCode::DuplicateEdge,
                 "(" + std::to_string(v + 1) + "," + std::to_string(*dup + 1) + ")");
        }
    }
    g.sink_mult_ = std::move(sink_multiplicity);
    return g;
}

bool Graph::has_sink_edges() const noexcept {
    return std::any_of(sink_mult_.begin(), sink_mult_.end(), [](auto m) { return m > 0; });
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

bool SandpileInstance::is_sink(Vertex v) const noexcept {
    return std::binary_search(sinks.begin(), sinks.end(), v);
}

MergedInstance merge_sinks(const SandpileInstance& instance) {
    if (!instance.has_sink()) fail(ErrorCode::NoSink, "instance has no sink");
    const std::size_t n = instance.size();
    MergedInstance out;
    if (instance.sinks.empty()) {
        out.instance = instance;
        out.original.resize(n);
        for (Vertex v = 0; v < n; ++v) out.original[v] = v;
        return out;
    }
    constexpr Vertex kGone = ~Vertex{0};
    std::vector<Vertex> local(n, kGone);
    for (Vertex v = 0; v < n; ++v) {
        if (!instance.is_sink(v)) {
            local[v] = static_cast<Vertex>(out.original.size());
            out.original.push_back(v);
        }
    }
    const std::size_t core = out.original.size();
    std::vector<std::uint32_t> mult(core, 0);
    std::vector<Edge> edges;
    Configuration config(core);
    for (Vertex i = 0; i < core; ++i) {
        Vertex v = out.original[i];
        mult[i] = instance.graph.sink_multiplicity(v);
        config[i] = instance.config[v];
        for (Vertex w : instance.graph.neighbors(v)) {
            if (local[w] == kGone) {
                ++mult[i];
            } else if (v < w) {
                edges.emplace_back(i, local[w]);
            }
        }
    }
    out.instance.graph = build_graph(core, edges, std::move(mult));
    out.instance.config = std::move(config);
    return out;
}

Chips total_chips(std::span<const Chips> config) {
    Chips sum = 0;
    for (Chips c : config) sum = checked_add(sum, c);
    return sum;
}

bool is_connected(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (n == 0) return true;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<Vertex> queue;
    queue.reserve(n);
    queue.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (Vertex w : g.neighbors(queue[i])) {
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return queue.size() == n;
}

void validate_instance(const SandpileInstance& instance) {
    const std::size_t n = instance.size();
    if (n == 0) fail(ErrorCode::MalformedInstance, "empty graph");
    if (instance.config.size() != n) fail(ErrorCode::MalformedInstance, "configuration size");
    for (std::size_t i = 0; i < instance.sinks.size(); ++i) {
        if (instance.sinks[i] >= n) fail(ErrorCode::BadSink, std::to_string(instance.sinks[i] + 1));
        if (i > 0 && instance.sinks[i] <= instance.sinks[i - 1]) {
            fail(ErrorCode::BadSink, "sink ids must be distinct");
        }
    }
    Chips sum = 0;
    for (Vertex v = 0; v < n; ++v) {
        Chips c = instance.config[v];
        if (c < 0) fail(ErrorCode::NegativeChips, "vertex " + std::to_string(v + 1));
        sum += c;
        if (sum >= kChipLimit) fail(ErrorCode::ChipLimitExceeded, "chip total too large");
    }
    if (!is_connected(instance.graph)) fail(ErrorCode::Disconnected, "graph is not connected");
    if (n == 1 && instance.graph.degree(0) == 0 && !instance.is_sink(0) && instance.config[0] > 0) {
        fail(ErrorCode::MalformedInstance, "isolated vertex with chips");
    }
}

bool is_tree(const Graph& g) {
    return g.vertex_count() > 0 && g.edge_count() + 1 == g.vertex_count() && is_connected(g);
}

std::vector<Vertex> path_order(const Graph& g) {
    const std::size_t n = g.vertex_count();
    if (!is_tree(g)) return {};
    if (n == 1) return {0};
    Vertex start = 0;
    bool found = false;
    for (Vertex v = 0; v < n; ++v) {
        if (g.adjacency_size(v) > 2) return {};
        if (!found && g.adjacency_size(v) == 1) {
            start = v;
            found = true;
        }
    }
    constexpr Vertex kNone = ~Vertex{0};
    std::vector<Vertex> order;
    order.reserve(n);
    Vertex prev = kNone, cur = start;
    while (cur != kNone) {
        order.push_back(cur);
        Vertex next = kNone;
        for (Vertex w : g.neighbors(cur)) {
            if (w != prev) next = w;
        }
        prev = cur;
        cur = next;
    }
    return order;
}

bool is_clique(const Graph& g) {
    const std::size_t n = g.vertex_count();
    return n >= 2 && g.edge_count() == n * (n - 1) / 2;
}

bool is_pseudotree(const Graph& g) {
    return g.vertex_count() > 0 && g.edge_count() <= g.vertex_count() && is_connected(g);
}

Configuration apply_firings(const SandpileInstance& instance, std::span<const Chips> firings) {
    const Graph& g = instance.graph;
    Configuration out = instance.config;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        Chips c = firings[u];
        if (c == 0) continue;
        if (instance.is_sink(u)) fail(ErrorCode::IsSink, "sink with firings");
        out[u] = checked_sub(out[u], checked_mul(c, g.degree(u)));
        for (Vertex w : g.neighbors(u)) {
            if (!instance.is_sink(w)) out[w] = checked_add(out[w], c);
        }
    }
    return out;
}

bool is_terminal(const SandpileInstance& instance, std::span<const Chips> config) {
    const Graph& g = instance.graph;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (instance.is_sink(u) || g.degree(u) == 0) continue;
        if (config[u] >= g.degree(u)) return false;
    }
    return true;
}

}  // namespace sandpile
