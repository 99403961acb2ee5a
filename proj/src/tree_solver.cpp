// Copyright (c) Sandpile contributors.
// SPDX-License-Identifier: Apache-2.0
#include "sandpile/tree_solver.hpp"

#include <string>

#include "sandpile/error.hpp"

namespace sandpile {
namespace {

// Everything except connectivity, which the solver gets from its own traversal.
void check_tree_shape(const Graph& tree, const Configuration& sigma) {
    const std::size_t n = tree.vertex_count();
    if (n == 0 || tree.edge_count() + 1 != n) fail(ErrorCode::NotATree, "graph is not a tree");
    if (tree.has_sink_edges()) fail(ErrorCode::NotATree, "tree has sink edges");
    if (sigma.size() != n) fail(ErrorCode::MalformedInstance, "configuration size");
    for (Vertex v = 0; v < sigma.size(); ++v) {
        if (sigma[v] < 0) fail(ErrorCode::NegativeChips, "vertex " + std::to_string(v + 1));
    }
}

}  // namespace

TreeSolver::TreeSolver(const Graph& tree, const Configuration& sigma, Vertex root)
    : store_(tree.vertex_count()) {
    check_tree_shape(tree, sigma);
    const std::size_t n = tree.vertex_count();
    if (root >= n) fail(ErrorCode::VertexOutOfRange, "root");
    TreeSolveState& s = state_;
    s.root = root;

    // Breadth-first numbering. Queue order keeps loads independent, which matters
    // once the tree no longer fits in cache; every later pass is a linear sweep.
    constexpr Vertex kUnseen = ~Vertex{0};
    s.slot.assign(n, kUnseen);
    s.vertex.reserve(n);
    s.parent.reserve(n);
    s.child_begin.reserve(n + 1);
    s.vertex.push_back(root);
    s.parent.push_back(0);
    s.slot[root] = 0;
    // Staged prefetch down the queue: offsets, then adjacency, then slot entries.
    constexpr std::size_t kAhead = 8;
    const std::uint32_t* offsets = tree.offsets_data();
    for (std::size_t i = 0; i < s.vertex.size(); ++i) {
        const std::size_t queued = s.vertex.size();
        if (i + 4 * kAhead < queued) __builtin_prefetch(offsets + s.vertex[i + 4 * kAhead]);
        if (i + 2 * kAhead < queued) __builtin_prefetch(tree.neighbors(s.vertex[i + 2 * kAhead]).data());
        if (i + kAhead < queued) {
            for (Vertex w : tree.neighbors(s.vertex[i + kAhead])) __builtin_prefetch(&s.slot[w]);
        }
        s.child_begin.push_back(static_cast<std::uint32_t>(s.vertex.size()));
        for (Vertex w : tree.neighbors(s.vertex[i])) {
            if (s.slot[w] == kUnseen) {
                s.slot[w] = static_cast<Vertex>(s.vertex.size());
                s.vertex.push_back(w);
                s.parent.push_back(static_cast<Vertex>(i));
            }
        }
    }
    if (s.vertex.size() != n) fail(ErrorCode::NotATree, "graph is not a tree");
    s.child_begin.push_back(static_cast<std::uint32_t>(n));

    sigma_.resize(n);
    for (std::size_t i = 0; i < n; ++i) sigma_[i] = sigma[s.vertex[i]];

    std::vector<std::int32_t> size(n, 1);
    for (std::size_t i = n; i-- > 1;) size[s.parent[i]] += size[i];
    s.dfs_order.assign(n, 0);
    s.dfs_order[0] = 1;
    for (Vertex u = 0; u < n; ++u) {
        std::int32_t next = s.dfs_order[u] + 1;
        for (std::uint32_t v = s.child_begin[u + 1]; v-- > s.child_begin[u];) {
            s.dfs_order[v] = next;
            next += size[v];
        }
    }

    s.sigma_prime = sigma_;
    s.c_down.assign(n, 0);
    s.c.assign(n, 0);
}

// Reverse slot order visits children before parents; siblings merge in
// increasing timestamp order.
void TreeSolver::solve_partial(const TreeSolveObserver& observer) {
    TreeSolveState& s = state_;
    for (Vertex u = static_cast<Vertex>(sigma_.size()); u-- > 0;) {
        const bool is_root = u == 0;
        const Vertex p = s.parent[u];
        const std::size_t kids = s.child_count(u);
        if (kids == 0) {
            s.c_down[u] = s.sigma_prime[u];
            if (!is_root) s.sigma_prime[p] += s.sigma_prime[u];
            s.sigma_prime[u] = 0;
        } else {
            if (observer.before_compute) observer.before_compute(u);
            const Chips deg = degree(u);
            const Chips k = store_.compute_c_down(u, s.sigma_prime[u], deg, is_root);
            s.c_down[u] = k;
            s.sigma_prime[u] += store_.delta_sum(u, k, static_cast<std::int64_t>(kids)) - k * deg;
            if (!is_root) s.sigma_prime[p] += k;
            store_.update(u, s.sigma_prime[u], deg, k, s.dfs_order[u]);
            if (observer.after_update) observer.after_update(u);
        }
        if (!is_root) {
            if (observer.before_merge) observer.before_merge(p, u);
            store_.merge(p, u);
        }
    }
}

void TreeSolver::solve_complete(const TreeSolveObserver& observer) {
    TreeSolveState& s = state_;
    for (Vertex u = 0; u < sigma_.size(); ++u) {
        const Chips k = u == 0 ? 0 : store_.delta_query(u, s.c[s.parent[u]]);
        store_.revert(u, s.c_down[u]);
        if (observer.after_revert) observer.after_revert(u);
        s.c[u] = s.c_down[u] + k;
        // Highest timestamps first, undoing the merges.
        for (Vertex v = s.child_begin[u]; v < s.child_begin[u + 1]; ++v) {
            store_.split(u, v, s.dfs_order[v]);
            if (observer.after_split) observer.after_split(u, v);
        }
    }
}

StabilizationResult TreeSolver::result() const {
    const TreeSolveState& s = state_;
    const std::size_t n = sigma_.size();
    Configuration local = sigma_;
    for (Vertex u = 0; u < n; ++u) {
        const Chips c = s.c[u];
        local[u] = checked_sub(local[u], checked_mul(c, degree(u)));
        if (u != 0) {
            local[s.parent[u]] = checked_add(local[s.parent[u]], c);
            local[u] = checked_add(local[u], s.c[s.parent[u]]);
        }
    }
    StabilizationResult r;
    r.status = Status::Terminal;
    r.config.assign(n, 0);
    r.firings.assign(n, 0);
    for (Vertex u = 0; u < n; ++u) {
        r.config[s.vertex[u]] = local[u];
        r.firings[s.vertex[u]] = s.c[u];
        r.total_firings += static_cast<std::uint64_t>(s.c[u]);
    }
    return r;
}

StabilizationResult solve_tree(const Graph& tree, const Configuration& sigma, Vertex root) {
    check_tree_shape(tree, sigma);
    const std::size_t n = tree.vertex_count();
    const Chips total = total_chips(sigma);
    if (n == 1) {
        if (total > 0) fail(ErrorCode::MalformedInstance, "isolated vertex with chips");
        return {Status::Terminal, sigma, FiringVector(1, 0), 0};
    }
    if (total > static_cast<Chips>(n) - 2) {
        if (!is_connected(tree)) fail(ErrorCode::NotATree, "graph is not a tree");
        return StabilizationResult::recurrent();
    }
    TreeSolver solver(tree, sigma, root);
    solver.solve_partial();
    solver.solve_complete();
    return solver.result();
}

}  // namespace sandpile
