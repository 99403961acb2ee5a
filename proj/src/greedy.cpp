// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/greedy.hpp"

#include <set>

#include "sandpile/error.hpp"

namespace sandpile {

GreedyResult stabilize_greedy(const SandpileInstance& instance, const GreedyOptions& options) {
    const GreedyTrace& trace = options.trace;
    MergedInstance merged = merge_sinks(instance);
    const Graph& g = merged.instance.graph;
    Configuration sigma = merged.instance.config;
    const std::size_t n = g.vertex_count();

    FiringVector fired(options.track_firings ? n : 0, 0);
    Chips remaining = total_chips(sigma);
    Chips absorbed = 0;
    std::uint64_t iterations = 0;

    auto ratio = [&](Vertex v) -> Chips { return g.degree(v) == 0 ? 0 : sigma[v] / g.degree(v); };
    std::set<std::pair<Chips, Vertex>> queue;  // (-ratio, id) of full vertices
    std::vector<Chips> key(n, 0);
    auto refresh = [&](Vertex v) {
        Chips r = ratio(v);
        if (r == key[v]) return;
        if (key[v] > 0) queue.erase({-key[v], v});
        key[v] = r;
        if (r > 0) queue.insert({-r, v});
    };
    for (Vertex v = 0; v < n; ++v) refresh(v);

    while (!queue.empty()) {
        const Vertex u = queue.begin()->second;
        const Chips k = key[u];
        const Chips deg = g.degree(u);
        sigma[u] = checked_sub(sigma[u], checked_mul(k, deg));
        if (options.track_firings) fired[u] = checked_add(fired[u], k);
        const Chips lost = checked_mul(k, Chips{g.sink_multiplicity(u)});
        absorbed = checked_add(absorbed, lost);
        remaining = checked_sub(remaining, lost);
        refresh(u);
        for (Vertex w : g.neighbors(u)) {
            sigma[w] = checked_add(sigma[w], k);
            refresh(w);
        }
        ++iterations;
        if (trace) trace({merged.original[u], k, remaining});
    }

    GreedyResult out;
    out.iterations = iterations;
    out.absorbed = absorbed;
    out.config = instance.config;
    if (options.track_firings) out.firings.assign(instance.size(), 0);
    for (Vertex i = 0; i < n; ++i) {
        out.config[merged.original[i]] = sigma[i];
        if (options.track_firings) out.firings[merged.original[i]] = fired[i];
    }
    return out;
}

}  // namespace sandpile
