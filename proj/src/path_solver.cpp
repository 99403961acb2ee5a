// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/path_solver.hpp"

#include <string>

#include "sandpile/error.hpp"
#include "sandpile/keypair_store.hpp"

namespace sandpile {

StabilizationResult solve_path(std::size_t n, const Configuration& sigma) {
    if (n == 0) fail(ErrorCode::NotAPath, "empty path");
    if (sigma.size() != n) fail(ErrorCode::MalformedInstance, "configuration size");
    for (Vertex v = 0; v < n; ++v) {
        if (sigma[v] < 0) fail(ErrorCode::NegativeChips, "vertex " + std::to_string(v + 1));
    }
    const Chips total = total_chips(sigma);
    if (n == 1) {
        if (total > 0) fail(ErrorCode::MalformedInstance, "isolated vertex with chips");
        return {Status::Terminal, sigma, FiringVector(1, 0), 0};
    }
    if (total > static_cast<Chips>(n) - 2) return StabilizationResult::recurrent();

    auto degree = [n](std::size_t u) -> Chips { return (u == 0 || u + 1 == n) ? 1 : 2; };
    KeyPairStore store(n);
    Configuration sigma_prime = sigma;
    FiringVector c_down(n, 0);

    // Upward pass, deepest vertex first. The only child hands over its store.
    for (std::size_t i = n; i-- > 0;) {
        const auto u = static_cast<Vertex>(i);
        if (i + 1 == n) {
            c_down[u] = sigma_prime[u];
            sigma_prime[u - 1] += sigma_prime[u];
            sigma_prime[u] = 0;
            continue;
        }
        store.move(u + 1, u);
        const Chips deg = degree(i);
        const Chips k = store.compute_c_down(u, sigma_prime[u], deg, i == 0);
        c_down[u] = k;
        sigma_prime[u] += store.delta_sum(u, k, 1) - k * deg;
        if (i > 0) sigma_prime[u - 1] += k;
        store.update(u, sigma_prime[u], deg, k, static_cast<std::int32_t>(i + 1));
    }
    Configuration().swap(sigma_prime);

    // Downward pass with aggregated counting.
    FiringVector c(n, 0);
    std::int64_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto u = static_cast<Vertex>(i);
        Chips k = 0;
        if (i > 0) {
            count += store.path_query(u, c[u - 1]);
            k = c[u - 1] - count;
        }
        count = store.path_revert(u, count, c_down[u]);
        c[u] = c_down[u] + k;
        if (i + 1 < n) store.move(u, u + 1);
    }

    StabilizationResult r;
    r.status = Status::Terminal;
    r.config = sigma;
    for (std::size_t u = 0; u < n; ++u) {
        r.total_firings += static_cast<std::uint64_t>(c[u]);
        r.config[u] -= c[u] * degree(u);
        if (u > 0) r.config[u] += c[u - 1];
        if (u + 1 < n) r.config[u] += c[u + 1];
    }
    r.firings = std::move(c);
    return r;
}

StabilizationResult solve_path_graph(const Graph& graph, const Configuration& sigma) {
    if (graph.has_sink_edges()) fail(ErrorCode::NotAPath, "path has sink edges");
    const std::vector<Vertex> order = path_order(graph);
    if (order.empty()) fail(ErrorCode::NotAPath, "graph is not a path");
    if (sigma.size() != order.size()) fail(ErrorCode::MalformedInstance, "configuration size");
    Configuration relabelled(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) relabelled[i] = sigma[order[i]];
    StabilizationResult r = solve_path(order.size(), relabelled);
    if (!r.terminal()) return r;
    StabilizationResult out = r;
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.config[order[i]] = r.config[i];
        out.firings[order[i]] = r.firings[i];
    }
    return out;
}

}  // namespace sandpile
