// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/reduction.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "sandpile/error.hpp"
#include "sandpile/greedy.hpp"
#include "sandpile/oracle.hpp"
#include "sandpile/tree_solver.hpp"

namespace sandpile {
namespace {

constexpr Vertex kGone = std::numeric_limits<Vertex>::max();

std::optional<Chips> add_opt(Chips a, Chips b) {
    Chips r;
    if (__builtin_add_overflow(a, b, &r) || r >= kChipLimit) return std::nullopt;
    return r;
}

std::optional<Chips> mul_opt(Chips a, Chips b) {
    Chips r;
    if (__builtin_mul_overflow(a, b, &r) || r >= kChipLimit) return std::nullopt;
    return r;
}

/// Working view: the full graph, with some vertices acting as sinks.
struct Level {
    const Graph& graph;
    std::vector<std::uint8_t> sink;
    const ComponentSolver& solver;
    Chips l2;
};

BoundedResult overflow() {
    BoundedResult r;
    r.overflow = true;
    return r;
}

/// Solves the instance on the non-sink vertices of level, with sigma on all
/// vertices. Firings of sink vertices are reported as zero.
BoundedResult solve_level(Level& level, const Configuration& sigma, std::span<const Vertex> removal,
                          Chips l1) {
    const Graph& g = level.graph;
    const std::size_t n = g.vertex_count();
    Chips sum = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (level.sink[v]) continue;
        auto s = add_opt(sum, sigma[v]);
        if (!s) return overflow();
        sum = *s;
    }
    if (sum > l1) return overflow();

    if (removal.empty()) {
        SandpileInstance whole{g, sigma, {}};
        for (Vertex v = 0; v < n; ++v) {
            if (level.sink[v]) whole.sinks.push_back(v);
        }
        BoundedResult out;
        out.config = sigma;
        out.firings.assign(n, 0);
        for (const Component& comp : remove_vertices(whole, {})) {
            StabilizationResult r = level.solver(comp.instance);
            if (!r.terminal()) return overflow();
            for (std::size_t i = 0; i < comp.original.size(); ++i) {
                if (r.firings[i] > level.l2) return overflow();
                out.config[comp.original[i]] = r.config[i];
                out.firings[comp.original[i]] = r.firings[i];
            }
        }
        return out;
    }

    const Vertex p = removal.front();
    const auto rest = removal.subspan(1);
    const Chips deg = g.degree(p);

    auto trial = [&](Chips mid) -> BoundedResult {
        Configuration pushed = sigma;
        for (Vertex w : g.neighbors(p)) {
            if (level.sink[w]) continue;
            auto s = add_opt(pushed[w], mid);
            if (!s) return overflow();
            pushed[w] = *s;
        }
        auto extra = mul_opt(deg, mid);
        if (!extra) return overflow();
        auto budget = add_opt(l1, *extra);
        if (!budget) return overflow();
        level.sink[p] = 1;
        BoundedResult sub = solve_level(level, pushed, rest, *budget);
        level.sink[p] = 0;
        return sub;
    };
    // Chips left on p when it fires mid times and its neighbors fire as in sub.
    auto left_on_p = [&](const BoundedResult& sub, Chips mid) -> std::optional<Chips> {
        __int128 v = sigma[p];
        for (Vertex w : g.neighbors(p)) {
            if (!level.sink[w]) v += sub.firings[w];
        }
        v -= static_cast<__int128>(mid) * deg;
        if (v < std::numeric_limits<Chips>::min() || v > std::numeric_limits<Chips>::max()) {
            return std::nullopt;
        }
        return static_cast<Chips>(v);
    };
    auto accepts = [&](Chips mid) {
        BoundedResult sub = trial(mid);
        if (sub.overflow) return true;
        auto left = left_on_p(sub, mid);
        return left && *left < deg;
    };

    // Gallop up from zero, then bisect the bracket. The predicate is monotone,
    // so this finds the same minimum as bisecting all of [0, L2].
    Chips lo = 0, hi = 0;
    if (!accepts(0)) {
        if (level.l2 == 0) return overflow();
        Chips probe = 1;
        for (;;) {
            if (accepts(probe)) break;
            if (probe == level.l2) return overflow();
            lo = probe + 1;
            probe = probe > level.l2 / 2 ? level.l2 : probe * 2;
        }
        hi = probe;
    }
    while (lo < hi) {
        const Chips mid = lo + (hi - lo) / 2;
        if (accepts(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    BoundedResult out = trial(lo);
    if (out.overflow) return out;
    auto left = left_on_p(out, lo);
    if (!left || *left < 0) fail(ErrorCode::InvariantViolation, "negative chips on removed vertex");
    out.firings[p] = lo;
    out.config[p] = *left;
    // Chips pushed to sink neighbors of p never arrive.
    return out;
}

}  // namespace

StabilizationResult default_component_solver(const SandpileInstance& component) {
    if (component.has_sink()) {
        GreedyResult g = stabilize_greedy(component);
        StabilizationResult r;
        r.status = Status::Terminal;
        r.config = std::move(g.config);
        r.firings = std::move(g.firings);
        for (Chips c : r.firings) r.total_firings += static_cast<std::uint64_t>(c);
        return r;
    }
    if (is_tree(component.graph)) return solve_tree(component.graph, component.config);
    return stabilize_naive(component);
}

bool check_feasible(const Graph& graph, std::span<const Chips> sigma, std::span<const Chips> f,
                    std::span<const Vertex> sinks) {
    const std::size_t n = graph.vertex_count();
    std::vector<std::uint8_t> sink(n, 0);
    for (Vertex s : sinks) sink[s] = 1;
    for (Vertex u = 0; u < n; ++u) {
        if (sink[u]) continue;
        __int128 v = sigma[u];
        for (Vertex w : graph.neighbors(u)) {
            if (!sink[w]) v += f[w];
        }
        const Chips deg = graph.degree(u);
        v -= static_cast<__int128>(f[u]) * deg;
        if (v >= deg) return false;
    }
    return true;
}

std::vector<Component> remove_vertices(const SandpileInstance& instance,
                                       std::span<const Vertex> removed) {
    const Graph& g = instance.graph;
    const std::size_t n = g.vertex_count();
    if (removed.empty() && instance.sinks.empty() && is_connected(g)) {
        Component whole;
        whole.instance = instance;
        whole.original.resize(n);
        for (Vertex v = 0; v < n; ++v) whole.original[v] = v;
        return {std::move(whole)};
    }
    std::vector<std::uint8_t> gone(n, 0);
    for (Vertex v : removed) {
        if (v >= n) fail(ErrorCode::VertexOutOfRange, std::to_string(v + 1));
        gone[v] = 1;
    }
    for (Vertex s : instance.sinks) gone[s] = 1;

    std::vector<Vertex> local(n, kGone);
    std::vector<Component> out;
    for (Vertex start = 0; start < n; ++start) {
        if (gone[start] || local[start] != kGone) continue;
        Component comp;
        comp.original.push_back(start);
        local[start] = 0;
        for (std::size_t i = 0; i < comp.original.size(); ++i) {
            for (Vertex w : g.neighbors(comp.original[i])) {
                if (!gone[w] && local[w] == kGone) {
                    local[w] = static_cast<Vertex>(comp.original.size());
                    comp.original.push_back(w);
                }
            }
        }
        const std::size_t k = comp.original.size();
        std::vector<std::uint32_t> mult(k, 0);
        std::vector<Edge> edges;
        Configuration config(k);
        for (Vertex i = 0; i < k; ++i) {
            const Vertex v = comp.original[i];
            mult[i] = g.sink_multiplicity(v);
            config[i] = instance.config[v];
            for (Vertex w : g.neighbors(v)) {
                if (gone[w]) {
                    ++mult[i];
                } else if (i < local[w]) {
                    edges.emplace_back(i, local[w]);
                }
            }
        }
        comp.instance.graph = build_graph(k, edges, std::move(mult));
        comp.instance.config = std::move(config);
        out.push_back(std::move(comp));
    }
    return out;
}

BoundedResult solve_bounded(const BoundedProblem& problem, std::span<const Vertex> removal,
                            const ComponentSolver& solver) {
    const SandpileInstance& inst = problem.instance;
    const std::size_t n = inst.size();
    Level level{inst.graph, std::vector<std::uint8_t>(n, 0), solver, problem.l2};
    for (Vertex s : inst.sinks) level.sink[s] = 1;
    std::vector<std::uint8_t> used(n, 0);
    for (Vertex p : removal) {
        if (p >= n) fail(ErrorCode::VertexOutOfRange, std::to_string(p + 1));
        if (level.sink[p] || used[p]) fail(ErrorCode::MalformedInstance, "bad removal vertex");
        used[p] = 1;
    }
    return solve_level(level, inst.config, removal, problem.l1);
}

StabilizationResult solve_by_removal(const SandpileInstance& instance,
                                     std::span<const Vertex> removal,
                                     const ComponentSolver& solver) {
    if (removal.empty()) fail(ErrorCode::MalformedInstance, "removal set is empty");
    const Graph& g = instance.graph;
    const std::size_t n = g.vertex_count();
    const Chips total = total_chips(instance.config);
    if (!instance.has_sink()) {
        // More chips than 2m - n never stabilize on a connected graph; this
        // also covers totals of at least 2m.
        const Chips m = static_cast<Chips>(g.edge_count());
        if (total > 2 * m - static_cast<Chips>(n)) return StabilizationResult::recurrent();
    }
    BoundedProblem problem;
    problem.instance = instance;
    problem.l1 = total;
    const auto nn = static_cast<Chips>(n);
    problem.l2 = mul_opt(nn * nn, nn * nn).value_or(kChipLimit - 1);
    BoundedResult b = solve_bounded(problem, removal, solver);
    if (b.overflow) return StabilizationResult::recurrent();
    return make_terminal(instance, std::move(b.firings));
}

std::vector<Vertex> find_cycle(const Graph& graph) {
    const std::size_t n = graph.vertex_count();
    std::vector<std::uint32_t> deg(n);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = graph.adjacency_size(v);
        if (deg[v] <= 1) queue.push_back(v);
    }
    std::vector<std::uint8_t> peeled(n, 0);
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const Vertex v = queue[i];
        peeled[v] = 1;
        for (Vertex w : graph.neighbors(v)) {
            if (!peeled[w] && --deg[w] == 1) queue.push_back(w);
        }
    }
    std::vector<Vertex> cycle;
    for (Vertex v = 0; v < n; ++v) {
        if (!peeled[v]) cycle.push_back(v);
    }
    return cycle;
}

StabilizationResult solve_pseudotree(const SandpileInstance& instance) {
    const Graph& g = instance.graph;
    if (instance.has_sink()) fail(ErrorCode::NotPseudotree, "pseudotree input has sinks");
    if (!is_pseudotree(g)) fail(ErrorCode::NotPseudotree, "graph is not a pseudotree");
    if (g.edge_count() + 1 == g.vertex_count()) return solve_tree(g, instance.config);
    const std::vector<Vertex> cycle = find_cycle(g);
    if (cycle.empty()) fail(ErrorCode::InvariantViolation, "no cycle found");
    const Vertex p = cycle.front();
    return solve_by_removal(instance, std::span<const Vertex>(&p, 1));
}

}  // namespace sandpile
