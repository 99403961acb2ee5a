// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/generators.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "sandpile/error.hpp"

namespace sandpile {

Graph make_path(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n);
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return build_graph(n, edges);
}

Graph make_cycle(std::size_t n) {
    if (n < 3) fail(ErrorCode::BadFamilyParams, "cycle needs n >= 3");
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
    return build_graph(n, edges);
}

Graph make_clique(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return build_graph(n, edges);
}

Graph make_star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return build_graph(leaves + 1, edges);
}

Graph make_hypercube(unsigned dimension) {
    if (dimension > 24) fail(ErrorCode::BadFamilyParams, "hypercube dimension too large");
    const std::size_t n = std::size_t{1} << dimension;
    std::vector<Edge> edges;
    edges.reserve(n * dimension / 2);
    for (Vertex v = 0; v < n; ++v) {
        for (unsigned b = 0; b < dimension; ++b) {
            const Vertex w = v ^ (Vertex{1} << b);
            if (v < w) edges.emplace_back(v, w);
        }
    }
    return build_graph(n, edges);
}

Graph random_tree(std::size_t n, Rng& rng) {
    if (n == 0) fail(ErrorCode::BadFamilyParams, "tree needs n >= 1");
    if (n <= 2) return make_path(n);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    std::vector<Vertex> code(n - 2);
    for (auto& x : code) x = pick(rng);
    std::vector<std::uint32_t> degree(n, 1);
    for (Vertex x : code) ++degree[x];
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
    for (Vertex v = 0; v < n; ++v) {
        if (degree[v] == 1) leaves.push(v);
    }
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (Vertex x : code) {
        const Vertex leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, x);
        if (--degree[x] == 1) leaves.push(x);
    }
    const Vertex a = leaves.top();
    leaves.pop();
    edges.emplace_back(a, leaves.top());
    return build_graph(n, edges);
}

Graph random_pseudotree(std::size_t n, Rng& rng) {
    if (n < 3) fail(ErrorCode::BadFamilyParams, "pseudotree with a cycle needs n >= 3");
    Graph tree = random_tree(n, rng);
    std::vector<Edge> edges = tree.edges();
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    for (;;) {
        Vertex u = pick(rng), v = pick(rng);
        if (u != v && !tree.has_edge(u, v)) {
            edges.emplace_back(u, v);
            break;
        }
    }
    return build_graph(n, edges);
}

Graph random_regular(std::size_t n, unsigned d, Rng& rng) {
    if (d == 0 || d >= n || (n * d) % 2 != 0) {
        fail(ErrorCode::BadFamilyParams, "regular graph needs 0 < d < n and n*d even");
    }
    std::vector<Vertex> stubs;
    stubs.reserve(n * d);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        stubs.clear();
        for (Vertex v = 0; v < n; ++v) {
            for (unsigned i = 0; i < d; ++i) stubs.push_back(v);
        }
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::set<Edge> seen;
        std::vector<Edge> edges;
        bool ok = true;
        for (std::size_t i = 0; i < stubs.size(); i += 2) {
            Vertex u = std::min(stubs[i], stubs[i + 1]);
            Vertex v = std::max(stubs[i], stubs[i + 1]);
            if (u == v || !seen.insert({u, v}).second) {
                ok = false;
                break;
            }
            edges.emplace_back(u, v);
        }
        if (!ok) continue;
        Graph g = build_graph(n, edges);
        if (is_connected(g)) return g;
    }
    fail(ErrorCode::BadFamilyParams, "could not sample a simple connected regular graph");
}

Graph random_connected(std::size_t n, std::size_t m, Rng& rng) {
    if (n == 0 || m + 1 < n || m > n * (n - 1) / 2) {
        fail(ErrorCode::BadFamilyParams, "edge count out of range");
    }
    Graph tree = random_tree(n, rng);
    std::vector<Edge> edges = tree.edges();
    std::set<Edge> seen(edges.begin(), edges.end());
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    while (edges.size() < m) {
        Vertex u = pick(rng), v = pick(rng);
        if (u == v) continue;
        Edge e{std::min(u, v), std::max(u, v)};
        if (seen.insert(e).second) edges.push_back(e);
    }
    return build_graph(n, edges);
}

Configuration random_config(std::size_t n, Chips total, Rng& rng) {
    Configuration config(n, 0);
    if (n == 0 || total <= 0) return config;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    if (total <= Chips{1} << 22) {
        for (Chips i = 0; i < total; ++i) ++config[pick(rng)];
        return config;
    }
    // Large totals: random cut points.
    std::uniform_int_distribution<Chips> cut(0, total);
    std::vector<Chips> cuts(n - 1);
    for (auto& c : cuts) c = cut(rng);
    std::sort(cuts.begin(), cuts.end());
    Chips prev = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        config[i] = cuts[i] - prev;
        prev = cuts[i];
    }
    config[n - 1] = total - prev;
    return config;
}

}  // namespace sandpile
