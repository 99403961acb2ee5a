// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/oracle.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <string>

#include "sandpile/error.hpp"

namespace sandpile {
namespace {

std::vector<std::uint8_t> sink_mask(std::size_t n, std::span<const Vertex> sinks) {
    std::vector<std::uint8_t> mask(n, 0);
    for (Vertex s : sinks) {
        if (s >= n) fail(ErrorCode::BadSink, std::to_string(s + 1));
        mask[s] = 1;
    }
    return mask;
}

void fire_in_place(const Graph& g, const std::vector<std::uint8_t>& sink, Configuration& config,
                   Vertex u) {
    config[u] -= g.degree(u);
    for (Vertex w : g.neighbors(u)) {
        if (!sink[w]) config[w] = checked_add(config[w], 1);
    }
}

bool full(const Graph& g, const Configuration& config, Vertex v) {
    Chips d = g.degree(v);
    return d > 0 && config[v] >= d;
}

/// Full-vertex pool honoring one selection order.
class Frontier {
public:
    Frontier(FiringOrder order, std::uint64_t seed, std::size_t n)
        : order_(order), rng_(seed), member_(n, 0) {}

    void offer(Vertex v, const Configuration& config) {
        if (member_[v]) {
            if (order_ == FiringOrder::HighestChips) {
                by_chips_.erase({-keyed_[v], v});
                keyed_[v] = config[v];
                by_chips_.insert({-keyed_[v], v});
            }
            return;
        }
        member_[v] = 1;
        switch (order_) {
            case FiringOrder::LowestId: by_id_.insert(v); break;
            case FiringOrder::Random: pool_.push_back(v); break;
            case FiringOrder::HighestChips:
                if (keyed_.empty()) keyed_.assign(member_.size(), 0);
                keyed_[v] = config[v];
                by_chips_.insert({-keyed_[v], v});
                break;
        }
    }

    bool empty() const {
        switch (order_) {
            case FiringOrder::LowestId: return by_id_.empty();
            case FiringOrder::Random: return pool_.empty();
            case FiringOrder::HighestChips: return by_chips_.empty();
        }
        return true;
    }

    /// Removes and returns the next vertex to consider.
    Vertex take() {
        Vertex v = 0;
        switch (order_) {
            case FiringOrder::LowestId:
                v = *by_id_.begin();
                by_id_.erase(by_id_.begin());
                break;
            case FiringOrder::Random: {
                std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
                std::size_t i = pick(rng_);
                v = pool_[i];
                pool_[i] = pool_.back();
                pool_.pop_back();
                break;
            }
            case FiringOrder::HighestChips:
                v = by_chips_.begin()->second;
                by_chips_.erase(by_chips_.begin());
                break;
        }
        member_[v] = 0;
        return v;
    }

private:
    FiringOrder order_;
    std::mt19937_64 rng_;
    std::vector<std::uint8_t> member_;
    std::set<Vertex> by_id_;
    std::vector<Vertex> pool_;
    std::vector<Chips> keyed_;
    std::set<std::pair<Chips, Vertex>> by_chips_;
};

std::uint64_t default_cap(std::size_t n) {
    // n^4 + 1, saturating.
    unsigned __int128 p = static_cast<unsigned __int128>(n) * n;
    p = p * n * n + 1;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    return p > kMax ? kMax : static_cast<std::uint64_t>(p);
}

}  // namespace

Configuration fire(const Configuration& config, Vertex u, const Graph& graph,
                   std::span<const Vertex> sinks) {
    const std::size_t n = graph.vertex_count();
    if (u >= n) fail(ErrorCode::VertexOutOfRange, std::to_string(u + 1));
    auto sink = sink_mask(n, sinks);
    if (sink[u]) fail(ErrorCode::IsSink, "vertex " + std::to_string(u + 1));
    if (!full(graph, config, u)) fail(ErrorCode::NotFull, "vertex " + std::to_string(u + 1));
    Configuration out = config;
    fire_in_place(graph, sink, out, u);
    return out;
}

OracleResult stabilize_naive(const SandpileInstance& instance, const OracleOptions& options) {
    const Graph& g = instance.graph;
    const std::size_t n = g.vertex_count();
    const bool with_sinks = instance.has_sink();
    const std::uint64_t cap = options.firing_cap.value_or(
        with_sinks ? std::numeric_limits<std::uint64_t>::max() : default_cap(n));
    if (cap < 1) fail(ErrorCode::MalformedInstance, "firing cap must be positive");

    if (options.tree_precheck && !with_sinks && n >= 2 && is_tree(g)) {
        if (total_chips(instance.config) > static_cast<Chips>(n) - 2) return OracleResult::recurrent();
    }
    const bool certificate = options.all_fired_certificate && !with_sinks && n >= 2 && is_connected(g);

    auto sink = sink_mask(n, instance.sinks);
    Configuration config = instance.config;
    FiringVector firings(n, 0);
    Frontier frontier(options.order, options.seed, n);
    for (Vertex v = 0; v < n; ++v) {
        if (!sink[v] && full(g, config, v)) frontier.offer(v, config);
    }

    std::uint64_t total = 0;
    std::size_t fired_vertices = 0;
    while (!frontier.empty()) {
        Vertex u = frontier.take();
        if (!full(g, config, u)) continue;
        if (total == cap) {
            if (with_sinks) fail(ErrorCode::CapExceededWithSinks, "firing cap exceeded");
            OracleResult r = OracleResult::recurrent();
            r.total_firings = total;
            return r;
        }
        fire_in_place(g, sink, config, u);
        ++total;
        if (firings[u]++ == 0 && ++fired_vertices == n && certificate) {
            OracleResult r = OracleResult::recurrent();
            r.total_firings = total;
            return r;
        }
        if (full(g, config, u)) frontier.offer(u, config);
        for (Vertex w : g.neighbors(u)) {
            if (!sink[w] && full(g, config, w)) frontier.offer(w, config);
        }
    }
    OracleResult r;
    r.status = Status::Terminal;
    r.config = std::move(config);
    r.firings = std::move(firings);
    r.total_firings = total;
    return r;
}

std::pair<Configuration, FiringVector> local_stabilize(const SandpileInstance& instance,
                                                       std::span<const Vertex> subset) {
    const Graph& g = instance.graph;
    const std::size_t n = g.vertex_count();
    auto sink = sink_mask(n, instance.sinks);
    std::vector<std::uint8_t> inside(n, 0);
    for (Vertex v : subset) {
        if (v >= n) fail(ErrorCode::VertexOutOfRange, std::to_string(v + 1));
        if (sink[v]) fail(ErrorCode::IsSink, "subset contains sink " + std::to_string(v + 1));
        inside[v] = 1;
    }
    Configuration config = instance.config;
    FiringVector firings(n, 0);
    std::deque<Vertex> queue;
    std::vector<std::uint8_t> queued(n, 0);
    for (Vertex v : subset) {
        if (!queued[v] && full(g, config, v)) {
            queued[v] = 1;
            queue.push_back(v);
        }
    }
    // The subset leaks chips to the outside, so firings scale with the chips on it.
    unsigned __int128 inside_chips = 0;
    for (Vertex v : subset) inside_chips += static_cast<std::uint64_t>(config[v]);
    const unsigned __int128 wide = static_cast<unsigned __int128>(default_cap(n)) * (inside_chips + 1);
    const std::uint64_t cap = wide > std::numeric_limits<std::uint64_t>::max()
                                  ? std::numeric_limits<std::uint64_t>::max()
                                  : static_cast<std::uint64_t>(wide);
    std::uint64_t total = 0;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        while (full(g, config, u)) {
            if (++total == cap) fail(ErrorCode::InvariantViolation, "local stabilization does not end");
            fire_in_place(g, sink, config, u);
            ++firings[u];
        }
        for (Vertex w : g.neighbors(u)) {
            if (inside[w] && !queued[w] && full(g, config, w)) {
                queued[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return {std::move(config), std::move(firings)};
}

Chips delta_bruteforce(const Graph& tree, Vertex root, const Configuration& config, Vertex u,
                       Chips x) {
    const std::size_t n = tree.vertex_count();
    if (root >= n || u >= n) fail(ErrorCode::VertexOutOfRange, "root or vertex");
    if (u == root) fail(ErrorCode::MalformedInstance, "u must not be the root");
    if (x < 0) fail(ErrorCode::NegativeChips, "x");
    constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> parent(n, kNone);
    std::vector<Vertex> order{root};
    parent[root] = root;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Vertex w : tree.neighbors(order[i])) {
            if (parent[w] == kNone) {
                parent[w] = order[i];
                order.push_back(w);
            }
        }
    }
    std::vector<Vertex> subtree{u};
    for (std::size_t i = 0; i < subtree.size(); ++i) {
        for (Vertex w : tree.neighbors(subtree[i])) {
            if (w != parent[subtree[i]]) subtree.push_back(w);
        }
    }
    for (Vertex v : subtree) {
        if (full(tree, config, v)) {
            fail(ErrorCode::NotLocalTerminal, "vertex " + std::to_string(v + 1) + " is full");
        }
    }
    SandpileInstance inst{tree, config, {}};
    inst.config[u] = checked_add(inst.config[u], x);
    auto [after, counts] = local_stabilize(inst, subtree);
    return after[parent[u]] - config[parent[u]];
}

}  // namespace sandpile
